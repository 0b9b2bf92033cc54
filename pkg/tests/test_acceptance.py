"""The eight acceptance criteria, each at exact tolerance.

Every criterion records one PASS/FAIL line; the lines are printed in the
terminal summary of a pytest run, and directly when this file is run as a
script.
"""
import time
from fractions import Fraction

from hyperspecial.a22_combinatorics import (
    enumerate_S, enumerate_S_oracle, verify_appendix_lemmas, verify_splitting,
)
from hyperspecial.affine_roots import DominantWeight, positive_roots
from hyperspecial.current_algebra import verify_basis
from hyperspecial.rep_builder import evaluation_module, fundamental_rep, g_decompose, weyl_dim
from hyperspecial.weyl_engine import (
    PiSpec, apply_P, associated_graded, build_generic_weyl, p_generating_series,
    verify_demazure_relations, verify_garland_recurrence, verify_straightening,
    verify_surjectivity,
)

RESULTS: list[str] = []

# (n, lambda, points, expected dimension)
MODULES = [
    (1, (1,), [1], 3), (1, (2,), [1, 2], 9), (1, (3,), [1, 2, 3], 27),
    (2, (1, 0), [1], 5), (2, (0, 1), [1], 10), (2, (1, 1), [1, 3], 50),
]
ALT_POINTS = {1: [5], 2: [5, 7], 3: [5, 7, 11]}

_cache = {}


def _module(n, lam, pts):
    key = (n, lam, tuple(pts))
    if key not in _cache:
        spec = PiSpec.from_weight(n, DominantWeight(lam), pts)
        _cache[key] = (spec, build_generic_weyl(n, spec))
    return _cache[key]


def _record(k, desc, fn):
    t = time.time()
    try:
        fn()
        ok, note = True, ""
    except AssertionError as exc:
        ok, note = False, f" ({exc})"
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} - {desc} [{time.time() - t:.1f}s]{note}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _c1():
    for n in (1, 2):
        rep = verify_basis(n, 8)
        assert rep["pass"]


def _c2():
    for n, lam, pts, dim in MODULES:
        spec, m = _module(n, lam, pts)
        assert m.dim == dim == spec.expected_dim(), (n, lam, m.dim)


def _c3():
    for n, lam, pts, _ in MODULES:
        spec, m = _module(n, lam, pts)
        v = m.cyclic_vector()
        # single evaluation factors: P_{i,r} acts by the coefficients of (1 - z u)
        for i, z, _ in spec.factors:
            f = evaluation_module(n, fundamental_rep(n, i), z)
            fv = f.cyclic_vector()
            for r in range(5):
                c = [Fraction(1), -z][r] if r < 2 else Fraction(0)
                got = apply_P(f, i, r, fv)
                assert got == ({k: c * x for k, x in fv.items()} if c else {}), (n, i, z, r)
        p_generating_series(m, v, spec, 4)
        for i in range(1, n + 1):
            verify_garland_recurrence(m, i, 4)


def _c4():
    for n, lam, pts in [(1, (3,), [1, 2, 3]), (2, (1, 1), [1, 3])]:
        _, m = _module(n, lam, pts)
        for root in positive_roots(n):
            verify_straightening(m, root, 3)


def _c5():
    for n, lam, pts, _ in MODULES:
        _, m = _module(n, lam, pts)
        weight = DominantWeight(lam)
        gm = associated_graded(m)
        verify_demazure_relations(gm, weight, 2 * sum(lam) + 4)
        _, m2 = _module(n, lam, ALT_POINTS[sum(lam)])
        assert associated_graded(m2).character() == gm.character(), (n, lam)


def _c6():
    for i in (1, 2):
        lam = tuple(int(j == i) for j in (1, 2))
        _, m = _module(2, lam, [1])
        dec = g_decompose(associated_graded(m).character(), 2)
        total = {}
        for piece in dec.values():
            for w, c in piece.items():
                total[w] = total.get(w, 0) + c
        want = {DominantWeight((0, 0)): 1}
        for j in range(1, i + 1):
            want[DominantWeight(tuple(int(k == j) for k in (1, 2)))] = 1
        assert total == want, (i, total)
    assert weyl_dim(2, DominantWeight((1, 0))) == 4
    assert weyl_dim(2, DominantWeight((0, 1))) == 5


def _c7():
    t = time.time()
    for s in range(7):
        for l2 in range(2 * s + 1):
            l, m = Fraction(l2, 2), Fraction(2 * s - l2, 2)
            assert enumerate_S(l, m) == enumerate_S_oracle(l, m), (l, m)
            if s <= 5:
                for k in range(4):
                    verify_splitting(l, m, k)
    for nw in range(4):
        verify_appendix_lemmas(nw)
    assert time.time() - t < 60


def _c8():
    for pts in ([1], [1, 2], [1, 2, 3]):
        for N in (1, 2):
            rep = verify_surjectivity(1, pts, N)
            assert rep["pass"], (pts, N, rep["witness"])
    bad = verify_surjectivity(1, [1, -1], 1, 12)
    assert not bad["pass"] and bad["witness"]["rank"] < bad["witness"]["target"]


def test_criterion_1_basis():
    _record(1, "basis independence, sigma-fixedness and closure, n = 1, 2, grade 8", _c1)


def test_criterion_2_dimension():
    _record(2, "generic local Weyl module dimensions 3, 9, 27, 5, 10, 50", _c2)


def test_criterion_3_p_operators():
    _record(3, "P-eigenvalues, generating series and Garland recurrence, r <= 4", _c3)


def test_criterion_4_straightening():
    _record(4, "straightening identities for all positive roots, r <= 3, n = 1, 2", _c4)


def test_criterion_5_demazure():
    _record(5, "associated graded satisfies the Demazure relations; character point-independent", _c5)


def test_criterion_6_decomposition():
    _record(6, "fundamental graded modules decompose as V(0) + ... + V(L_i)", _c6)


def test_criterion_7_appendix():
    _record(7, "sequence enumeration, splitting identity and rank-one lemmas", _c7)


def test_criterion_8_surjectivity():
    _record(8, "evaluation map surjective for generic points; deficit for (1, -1)", _c8)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
