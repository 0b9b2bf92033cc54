from fractions import Fraction

import pytest

from hyperspecial.affine_roots import AffineRoot, DominantWeight, cartan_label, half_root, long_root, positive_roots
from hyperspecial.rep_builder import evaluation_module, fundamental_rep, g_decompose, weyl_character
from hyperspecial.weyl_engine import (
    GenericityViolated, NotHighestWeight, PiSpec, apply_divided_power, apply_P,
    associated_graded, build_generic_weyl, build_mixed_module, p_generating_series, p_table,
    straightening_sides, verify_demazure_relations, verify_garland_recurrence,
    verify_straightening, verify_surjectivity,
)


def weyl(n, lam, pts):
    return build_generic_weyl(n, PiSpec.from_weight(n, DominantWeight(lam), pts))


def test_divided_powers():
    m = evaluation_module(1, fundamental_rep(1, 1), 2)
    v = m.cyclic_vector()
    assert apply_divided_power(m, AffineRoot(0, long_root(1, 1, -1)), 0, v) == v
    # x_{-a}^{(2)} kills the top of a 2-dim sp_2 piece
    assert apply_divided_power(m, AffineRoot(0, long_root(1, 1, -1)), 2, v) == {}


@pytest.mark.parametrize("z", [1, 2, Fraction(1, 3)])
def test_apply_P_single_factor(z):
    m = evaluation_module(2, fundamental_rep(2, 1), z)
    v = m.cyclic_vector()
    assert apply_P(m, 1, 1, v) == {k: -Fraction(z) * c for k, c in v.items()}
    assert apply_P(m, 1, 2, v) == {}
    assert apply_P(m, 1, 0, v) == v


def test_apply_P_requires_highest_weight():
    m = evaluation_module(1, fundamental_rep(1, 1), 1)
    low = {m.dim - 1: Fraction(1)}
    with pytest.raises(NotHighestWeight):
        apply_P(m, 1, 1, low)


def test_series_two_points():
    spec = PiSpec(1, [(1, 1, 1), (1, 2, 1)])
    m = build_generic_weyl(1, spec)
    tab = p_generating_series(m, m.cyclic_vector(), spec, 3)
    # (1 - u)(1 - 2u)
    assert tab.series(1) == [1, -3, 2, 0]


def test_series_with_dual_factor():
    # a factor of index 2n+1-i contributes pi(-u)
    spec = PiSpec(1, [(2, 3, 1)])
    m = build_generic_weyl(1, spec)
    assert p_generating_series(m, m.cyclic_vector(), spec, 2).series(1) == [1, 3, 0]


def test_genericity():
    with pytest.raises(GenericityViolated):
        build_generic_weyl(1, PiSpec(1, [(1, 1, 1), (1, -1, 1)]))
    with pytest.raises(GenericityViolated):
        build_generic_weyl(1, PiSpec(1, [(1, 2, 2)]))
    assert build_generic_weyl(2, PiSpec(2, [])).dim == 1


@pytest.mark.parametrize("n,lam,pts,dim", [(1, (1,), [1], 3), (1, (2,), [1, 2], 9), (2, (1, 0), [2], 5),
                                             (2, (0, 1), [3], 10), (3, (1, 0, 0), [1], 7)])
def test_dimension(n, lam, pts, dim):
    assert weyl(n, lam, pts).dim == dim


def test_garland_recurrence_exterior_square():
    m = evaluation_module(2, fundamental_rep(2, 2), 3)
    for i in (1, 2):
        assert verify_garland_recurrence(m, i, 4)["pass"]


@pytest.mark.parametrize("n,lam,pts", [(1, (2,), [1, 3]), (2, (1, 1), [1, 2])])
def test_straightening_all_roots(n, lam, pts):
    m = weyl(n, lam, pts)
    for root in positive_roots(n):
        rep = verify_straightening(m, root, 3)
        assert rep["pass"]


def test_uncorrected_half_identity_fails():
    m = weyl(1, (1,), [1])
    lhs, rhs = straightening_sides(m, long_root(1, 1), 1, m.cyclic_vector(), "2", literal=True)
    assert lhs != rhs
    lhs, rhs = straightening_sides(m, long_root(1, 1), 1, m.cyclic_vector(), "2")
    assert lhs == rhs


def test_mixed_module():
    m, tab = build_mixed_module(1, DominantWeight((1,)), PiSpec(1, [(1, 2, 1)]))
    assert tab.series(1)[:3] == [1, -2, 0]
    m0, tab0 = build_mixed_module(2, DominantWeight((1, 1)), PiSpec(2, []))
    assert all(c == 0 for (i, r), c in tab0.entries.items() if r > 0)


def test_associated_graded_preserves_dim_and_grade_zero():
    m = weyl(2, (1, 1), [1, 2])
    gm = associated_graded(m)
    assert gm.dim == m.dim
    grade0 = g_decompose(gm.character(), 2)[0]
    assert grade0 == {DominantWeight((1, 1)): 1}
    top = weyl_character(2, DominantWeight((1, 1))).at_grade(0)
    assert gm.character().at_grade(0) == top


def test_graded_character_independent_of_points():
    a = associated_graded(weyl(1, (2,), [1, 2])).character()
    b = associated_graded(weyl(1, (2,), [3, Fraction(1, 2)])).character()
    assert a == b


@pytest.mark.parametrize("nw", [0, 1, 2, 3])
def test_demazure_relations_rank_one(nw):
    gm = associated_graded(weyl(1, (nw,), [1, 2, 3][:nw]))
    rep = verify_demazure_relations(gm, DominantWeight((nw,)), 2 * nw + 4)
    assert rep["pass"]


def test_graded_module_is_graded_action():
    gm = associated_graded(weyl(1, (2,), [1, 2]))
    for lab in [AffineRoot(1, half_root(1, 1, -1)), AffineRoot(4, long_root(1, 1, -1)), cartan_label(1, 1)]:
        mat = gm.act(lab)
        for col, vec in mat.items():
            for row in vec:
                assert gm.grades[row] == gm.grades[col] + lab.grade


def test_surjectivity():
    assert verify_surjectivity(1, [1], 1)["witness"]["rank"] == 8
    assert verify_surjectivity(1, [1, 2], 2)["pass"]
    bad = verify_surjectivity(1, [1, -1], 1, 12)
    assert not bad["pass"] and bad["witness"]["rank"] < bad["witness"]["target"]
    assert verify_surjectivity(1, [], 1)["pass"]


def test_p_table_grade_shift():
    # the defining word of P_{i,r} raises the grade by 2r
    gm = associated_graded(weyl(1, (2,), [1, 2]))
    tab = p_table(gm, gm.cyclic_vector(), 3)
    assert all(c == 0 for (i, r), c in tab.entries.items() if r > 0)
