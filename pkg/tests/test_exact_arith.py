from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperspecial.exact_arith import (
    ONE, T, ZERO, EvalAtZero, LaurentPoly, as_rational, format_rational, lp_add, lp_eval,
    lp_mul, lp_negate_variable, lp_taylor, poly_from_roots,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.dictionaries(st.integers(-4, 4), rationals, max_size=5).map(LaurentPoly)
nonzero_points = rationals.filter(lambda x: x != 0)


def test_parse_examples():
    p = LaurentPoly.parse("3/2*t^-1 - 1 + t^2")
    assert p.coeffs == {-1: Fraction(3, 2), 0: Fraction(-1), 2: Fraction(1)}
    assert LaurentPoly.parse("0") == ZERO
    assert LaurentPoly.parse("t") == T


def test_str_round_trip_simple():
    p = LaurentPoly({-2: Fraction(-1, 3), 0: 5, 3: 1})
    assert LaurentPoly.parse(str(p)) == p


@given(polys)
def test_str_round_trip(p):
    assert LaurentPoly.parse(str(p)) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert lp_add(a, b) == lp_add(b, a)
    assert lp_mul(a, b) == lp_mul(b, a)
    assert lp_mul(a, lp_mul(b, c)) == lp_mul(lp_mul(a, b), c)
    assert lp_mul(a, lp_add(b, c)) == lp_add(lp_mul(a, b), lp_mul(a, c))
    assert lp_add(a, ZERO) == a and lp_mul(a, ONE) == a
    assert a - a == ZERO


@given(polys)
def test_negate_variable_is_involution(a):
    assert lp_negate_variable(lp_negate_variable(a)) == a


@given(polys, polys)
def test_negate_variable_is_ring_map(a, b):
    assert lp_negate_variable(a * b) == lp_negate_variable(a) * lp_negate_variable(b)


@given(polys, polys, nonzero_points)
def test_evaluation_is_ring_map(a, b, z):
    assert lp_eval(a * b, z) == lp_eval(a, z) * lp_eval(b, z)
    assert lp_eval(a + b, z) == lp_eval(a, z) + lp_eval(b, z)
    assert lp_eval(lp_negate_variable(a), z) == lp_eval(a, -z)


def test_eval_at_zero():
    assert lp_eval(1 + T * T, 0) == 1
    with pytest.raises(EvalAtZero):
        lp_eval(LaurentPoly.monomial(-1), 0)


@given(st.dictionaries(st.integers(0, 5), rationals, max_size=4).map(LaurentPoly), nonzero_points)
def test_taylor_reconstructs_polynomials(p, z):
    coeffs = lp_taylor(p, z, 6)
    back = ZERO
    for j, c in enumerate(coeffs):
        back = back + (T - z) ** j * c
    assert back == p


def test_taylor_of_inverse():
    # 1/t at 1: 1 - (t-1) + (t-1)^2 - ...
    assert lp_taylor(LaurentPoly.monomial(-1), 1, 4) == [1, -1, 1, -1]


def test_poly_from_roots():
    assert poly_from_roots([(Fraction(1), 1), (Fraction(2), 1)]) == [1, -3, 2]
    assert poly_from_roots([]) == [1]
    assert poly_from_roots([(Fraction(1, 2), 2)]) == [1, -1, Fraction(1, 4)]


def test_rational_helpers():
    assert as_rational("3/4") == Fraction(3, 4)
    assert as_rational(2) == 2
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(2)) == "2/1"
