import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperspecial.exact_arith import LaurentPoly
from hyperspecial.loop_lie import (
    ChevalleyLabel, IndexOutOfRange, LoopMatrix, SizeMismatch, X, bracket, cartan_matrix_cn,
    chevalley, finite_generators, sigma, sigma_signs, verify_generators,
)

small_poly = st.dictionaries(st.integers(-2, 2), st.integers(-3, 3), max_size=3).map(LaurentPoly)


def loop_matrices(size):
    offdiag = [(a, b) for a in range(1, size + 1) for b in range(1, size + 1) if a != b]
    return st.dictionaries(st.sampled_from(offdiag), small_poly, max_size=4).map(
        lambda e: LoopMatrix(size, e))


def test_chevalley_entries():
    assert X(1, "+", 1, 1).entries == {(1, 2): LaurentPoly.const(1)}
    assert X(1, "-", 1, 2).entries == {(3, 1): LaurentPoly.const(1)}
    h = chevalley(1, ChevalleyLabel("H", 2))
    assert h.entries == {(2, 2): LaurentPoly.const(1), (3, 3): LaurentPoly.const(-1)}


def test_bad_labels():
    with pytest.raises(IndexOutOfRange):
        chevalley(1, ChevalleyLabel("+", 2, 3))
    with pytest.raises(IndexOutOfRange):
        chevalley(0, ChevalleyLabel("H", 1))
    with pytest.raises(SizeMismatch):
        sigma(2, X(1, "+", 1, 1))


def test_trace_is_checked():
    with pytest.raises(ValueError):
        LoopMatrix(3, {(1, 1): LaurentPoly.const(1)})


@given(loop_matrices(3), loop_matrices(3))
def test_bracket_antisymmetric(a, b):
    assert bracket(a, b) == -bracket(b, a)


@given(loop_matrices(3), loop_matrices(3), loop_matrices(3))
def test_jacobi(a, b, c):
    s = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    assert s.is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sigma_involution_and_automorphism(n):
    size = 2 * n + 1

    @given(loop_matrices(size), loop_matrices(size))
    def check(a, b):
        assert sigma(n, sigma(n, a)) == a
        assert sigma(n, bracket(a, b)) == bracket(sigma(n, a), sigma(n, b))

    check()


def test_sigma_signs_parity():
    assert sigma_signs(2)[1:] == (1, -1, 1, -1, 1)
    assert sigma_signs(1)[1:] == (1, 1, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_verify_generators(n):
    rep = verify_generators(n)
    assert rep["pass"]
    assert rep["witness"]["cartan_matrix"] == cartan_matrix_cn(n)
    assert rep["witness"]["generated_dim"] == (2 * n + 1) ** 2 - 1


def test_generators_fixed_by_sigma():
    for n in (1, 2, 3):
        for m in finite_generators(n).values():
            assert sigma(n, m) == m


def test_cartan_matrix_type_c():
    # entry (i, j) is alpha_j(h_i)
    assert cartan_matrix_cn(1) == [[2]]
    assert cartan_matrix_cn(2) == [[2, -2], [-1, 2]]
    assert cartan_matrix_cn(3) == [[2, -1, 0], [-1, 2, -2], [0, -1, 2]]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sigma_on_chevalley_generators(n):
    size = 2 * n
    for i in range(1, n + 1):
        assert sigma(n, chevalley(n, ChevalleyLabel("H", i))) == chevalley(n, ChevalleyLabel("H", size + 1 - i))
        image = sigma(n, X(n, "+", i, i))
        mirror = X(n, "+", size + 1 - i, size + 1 - i)
        # the middle pair picks up a sign for odd n; that J fixes the whole basis
        if i == n and n % 2:
            assert image == -mirror
        else:
            assert image == mirror
