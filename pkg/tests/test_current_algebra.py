import pytest

from hyperspecial.affine_roots import AffineRoot, half_root
from hyperspecial.current_algebra import (
    basis_json, build_basis, entry_grade, get_algebra, root_matrix, triangular_split,
    verify_basis, verify_rank_one_subalgebras, x0_plus,
)
from hyperspecial.exact_arith import LaurentPoly
from hyperspecial.loop_lie import bracket, finite_generators, sigma


def test_grade_dims_n1():
    rep = verify_basis(1, 6)
    assert rep["witness"]["grade_dims"] == [3, 2, 1, 2, 3, 2, 1]
    assert rep["witness"]["size"] == 14


def test_grade_dims_n2():
    rep = verify_basis(2, 8)
    assert rep["witness"]["grade_dims"] == [10, 4, 6, 4, 10, 4, 6, 4, 10]


def test_grade_zero_is_sp():
    # grade zero is sp_{2n}: dimension n(2n+1)
    for n in (1, 2, 3):
        assert len(get_algebra(n, 0).basis) == n * (2 * n + 1)


def test_x0_plus_matches_generator():
    for n in (1, 2, 3):
        m = root_matrix(n, x0_plus(n))
        assert m == finite_generators(n)["x+0"]
        assert x0_plus(n) == AffineRoot(1, half_root(n, 1, -1))


def test_entries_homogeneous():
    for e in build_basis(2, 5):
        for (a, b, k) in e.matrix.flatten():
            assert entry_grade(2, a, b, k) == e.grade
        assert sigma(2, e.matrix) == e.matrix


def test_structure_constants_grade_additive():
    alg = get_algebra(1, 6)
    for x in alg.basis:
        for y in alg.basis:
            if x.grade + y.grade > 6:
                continue
            for lab in alg.structure_constants(x.label, y.label):
                assert lab.grade == x.grade + y.grade


def test_half_root_bracket_n1():
    # [x(e1,1/2), x(-e1,1/2)] lies in grade 1 + 1 = 2 and is a Cartan multiple
    alg = get_algebra(1, 4)
    c = alg.structure_constants(AffineRoot(1, half_root(1, 1)), AffineRoot(1, half_root(1, 1, -1)))
    assert c and all(lab.is_cartan for lab in c)


def test_triangular_split():
    basis = build_basis(2, 4)
    s = triangular_split(basis)
    assert len(s.plus) + len(s.minus) + len(s.cartan) == len(basis)
    assert all(e.label.sign > 0 for e in s.plus)
    assert all(e.label.sign < 0 for e in s.minus)
    assert all(e.label.is_cartan for e in s.cartan)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rank_one_subalgebras(n):
    assert verify_rank_one_subalgebras(n, 6)["pass"]


def test_basis_json_deterministic():
    assert basis_json(build_basis(2, 4)) == basis_json(build_basis(2, 4))


def test_basis_rejects_bad_input():
    with pytest.raises(ValueError):
        build_basis(0, 2)
