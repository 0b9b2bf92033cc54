from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperspecial.affine_roots import (
    HALF, LONG, SHORT, AffineRoot, DominantWeight, ImaginaryRoot, cartan_label,
    demazure_exponent, dynkin_from_eps, enumerate_affine_roots, eps_from_dynkin, half_root,
    long_root, pairing, positive_roots, short_root, simple_decomposition, simple_root,
)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_positive_root_count(n):
    roots = positive_roots(n)
    assert len(roots) == n * n
    assert sum(r.length_class == LONG for r in roots) == n


def test_simple_decomposition():
    assert simple_decomposition(long_root(2, 1)) == (2, 1)
    assert simple_decomposition(short_root(3, 1, 1, 2, 1)) == (1, 2, 1)
    assert simple_decomposition(simple_root(3, 2)) == (0, 1, 0)


def test_labels_print():
    assert str(AffineRoot(1, half_root(1, 1, -1))) == "x(-e1,1/2)"
    assert str(cartan_label(1, 1)) == "h(1,1)"
    assert str(AffineRoot(4, long_root(2, 2))) == "x(2e2,2)"


def test_invalid_delta_multiples():
    with pytest.raises(ValueError):
        AffineRoot(2, long_root(1, 1))
    with pytest.raises(ValueError):
        AffineRoot(2, half_root(1, 1))
    with pytest.raises(ValueError):
        AffineRoot(1, short_root(2, 1, 1, 2, -1))


def test_enumeration_n1():
    plus = enumerate_affine_roots(1, "+", 6)
    assert [str(r) for r in plus] == ["x(2e1,0)", "x(e1,1/2)", "x(e1,3/2)", "x(2e1,2)", "x(e1,5/2)"]
    minus = enumerate_affine_roots(1, "-", 3)
    assert [r.grade for r in minus] == [0, 1, 3]


@pytest.mark.parametrize("n,g", [(1, 8), (2, 6), (3, 4)])
def test_enumeration_sorted_and_unique(n, g):
    for sign in "+-":
        rs = enumerate_affine_roots(n, sign, g)
        assert rs == sorted(rs, key=AffineRoot.sort_key)
        assert len(set(rs)) == len(rs)
        assert all(r.grade <= g for r in rs)


@given(st.lists(st.integers(0, 5), min_size=1, max_size=4))
def test_eps_dynkin_round_trip(c):
    assert dynkin_from_eps(eps_from_dynkin(c)) == tuple(c)


def test_pairing_examples():
    lam = DominantWeight((1,))
    assert pairing(lam, AffineRoot(0, long_root(1, 1, -1))) == -1
    assert pairing(lam, AffineRoot(1, half_root(1, 1, -1))) == -1
    with pytest.raises(ImaginaryRoot):
        pairing(lam, cartan_label(1, 1))


@pytest.mark.parametrize("nw", [1, 2, 3, 4])
def test_demazure_exponents_rank_one(nw):
    lam = DominantWeight((nw,))
    for k in range(nw + 2):
        long_ = AffineRoot(4 * k, long_root(1, 1, -1))
        half = AffineRoot(2 * k + 1, half_root(1, 1, -1))
        # x_{-a+2k d}^{n-k+1} w = 0 and x_{-a/2+(k+1/2) d}^{2n-2k} w = 0
        assert demazure_exponent(lam, long_) + 1 == max(1, nw - k + 1)
        assert demazure_exponent(lam, half) + 1 == max(1, 2 * nw - 2 * k)


def test_dominance_enforced():
    with pytest.raises(ValueError):
        DominantWeight((-1, 0))
    assert str(DominantWeight((1, 2))) == "L1+2L2"
    assert DominantWeight.fundamental(3, 2).eps() == (1, 1, 0)
