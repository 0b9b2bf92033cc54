"""The explicit basis of the hyperspecial current algebra inside L(sl_{2n+1}).

Every basis vector x_beta or h_{i, r delta} is a loop matrix with one or two
nonzero entries.  ``CurrentAlgebra`` bundles a truncated basis with a
per-grade solver that expands brackets back into the basis; structure
constants are cached because module construction replays them often.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .affine_roots import (
    HALF, LONG, SHORT, AffineRoot, FiniteRoot, cartan_label, cartan_labels,
    enumerate_affine_roots, half_root, long_root, positive_roots,
)
from .exact_arith import LaurentPoly, format_rational
from .linalg import Subspace
from .loop_lie import H, LoopMatrix, VerificationFailed, X, bracket, sigma


def _mono(k: int, c=1) -> LaurentPoly:
    return LaurentPoly.monomial(k, c)


def _neg_t(k: int) -> LaurentPoly:
    """(-t)^k."""
    return _mono(k, (-1) ** (k % 2))


def root_matrix(n: int, label: AffineRoot) -> LoopMatrix:
    """The loop matrix of x_beta or h_{i, r delta} from the explicit formulas."""
    if label.finite is None:
        i, r = label.cartan_index, label.delta2 // 2
        if not 1 <= i <= n:
            raise ValueError(f"Cartan index {i} out of range for n={n}")
        return H(n, i, _mono(r)) + H(n, 2 * n + 1 - i, _neg_t(r))
    root = label.finite
    if root.n != n:
        raise ValueError(f"root {root} has rank {root.n}, expected {n}")
    s = root.sign
    sg = "+" if s > 0 else "-"
    pos = root if s > 0 else -root
    sup = pos.support()
    if pos.length_class == SHORT:
        r = label.delta2 // 2
        a, b = sup
        i, j = a, b - 1
        if pos.coords[b - 1] < 0:  # e_a - e_b
            return (X(n, sg, i, j, _mono(r))
                    + X(n, sg, 2 * n + 1 - j, 2 * n + 1 - i, _neg_t(r) * (-1) ** (i + j)))
        k = r + s  # e_a + e_b
        return (X(n, sg, i, 2 * n - j, _mono(k))
                + X(n, sg, j + 1, 2 * n + 1 - i, _neg_t(k) * (-1) ** (i + j)))
    (i,) = sup
    if pos.length_class == LONG:
        r = label.delta2 // 4
        return X(n, sg, i, 2 * n + 1 - i, _mono(2 * r + s))
    k = (label.delta2 + s) // 2  # half root: (2r + 1 +- 1)/2
    return X(n, sg, i, n, _mono(k)) + X(n, sg, n + 1, 2 * n + 1 - i, _neg_t(k) * (-1) ** i)


def entry_grade(n: int, a: int, b: int, k: int) -> int:
    """Eigenvalue of the scaling element on E_{a,b} (x) t^k.

    Independent of the root labels: rows/columns 1..n weigh 0, the middle
    one weighs 1 and n+2..2n+1 weigh 2, on top of 2 per power of t.
    """
    def c(x):
        return 0 if x <= n else (1 if x == n + 1 else 2)
    return 2 * k + c(a) - c(b)


@dataclass(frozen=True)
class CurrentBasisElement:
    label: AffineRoot
    matrix: LoopMatrix
    grade: int

    def __str__(self):
        return str(self.label)


def element(n: int, label: AffineRoot) -> CurrentBasisElement:
    return CurrentBasisElement(label, root_matrix(n, label), label.grade)


def x0_plus(n: int) -> AffineRoot:
    """The label of x_0^+ = X^-_{1,n} - X^-_{n+1,2n}: the half root -e_1 + delta/2."""
    return AffineRoot(1, half_root(n, 1, -1))


def build_basis(n: int, max_grade: int) -> list[CurrentBasisElement]:
    """All basis elements of grade at most ``max_grade`` in a fixed order."""
    if n < 1 or max_grade < 0:
        raise ValueError("need n >= 1 and max_grade >= 0")
    labels = (enumerate_affine_roots(n, "+", max_grade)
              + enumerate_affine_roots(n, "-", max_grade)
              + cartan_labels(n, max_grade))
    labels.sort(key=AffineRoot.sort_key)
    return [element(n, lab) for lab in labels]


@dataclass
class TriangularSplit:
    plus: list[CurrentBasisElement]
    minus: list[CurrentBasisElement]
    cartan: list[CurrentBasisElement]


def triangular_split(basis: list[CurrentBasisElement]) -> TriangularSplit:
    split = TriangularSplit([], [], [])
    for e in basis:
        if e.label.is_cartan:
            split.cartan.append(e)
        elif e.label.sign > 0:
            split.plus.append(e)
        else:
            split.minus.append(e)
    for a in split.cartan:
        for b in split.cartan:
            if bracket(a.matrix, b.matrix):
                raise VerificationFailed(f"[{a}, {b}] != 0")
    return split


class CurrentAlgebra:
    """A grade-truncated basis together with exact structure constants."""

    def __init__(self, n: int, max_grade: int):
        self.n = n
        self.max_grade = max_grade
        self.basis = build_basis(n, max_grade)
        self.by_label = {e.label: e for e in self.basis}
        self.labels = [e.label for e in self.basis]
        self._solvers: dict[int, Subspace] = {}
        self._consts: dict[tuple[AffineRoot, AffineRoot], dict[AffineRoot, Fraction]] = {}
        self._lock = threading.Lock()

    def of_grade(self, g: int) -> list[CurrentBasisElement]:
        return [e for e in self.basis if e.grade == g]

    def _solver(self, g: int) -> Subspace:
        sp = self._solvers.get(g)
        if sp is None:
            sp = Subspace()
            for e in self.of_grade(g):
                v = {(0,) + k: c for k, c in e.matrix.flatten().items()}
                v[(1, e.label.sort_key())] = Fraction(1)
                sp.add(v)
            self._solvers[g] = sp
        return sp

    def expand(self, m: LoopMatrix, grade: int) -> dict[AffineRoot, Fraction]:
        """Coefficients of m in the basis elements of the given grade.

        Raises VerificationFailed when m is not in their span.
        """
        if m.is_zero():
            return {}
        r = self._solver(grade).reduce({(0,) + k: c for k, c in m.flatten().items()})
        if any(k[0] == 0 for k in r):
            raise VerificationFailed(f"{m} is not in the span of grade-{grade} basis elements")
        keyed = {e.label.sort_key(): e.label for e in self.of_grade(grade)}
        return {keyed[k[1]]: -c for k, c in sorted(r.items())}

    def structure_constants(self, a: AffineRoot, b: AffineRoot) -> dict[AffineRoot, Fraction]:
        """[x_a, x_b] as a combination of basis labels (grade must fit the truncation)."""
        key = (a, b)
        got = self._consts.get(key)
        if got is not None:
            return got
        g = a.grade + b.grade
        if g > self.max_grade:
            raise ValueError(f"bracket grade {g} exceeds truncation {self.max_grade}")
        out = self.expand(bracket(self.by_label[a].matrix, self.by_label[b].matrix), g)
        with self._lock:
            self._consts[key] = out
        return out


@lru_cache(maxsize=None)
def get_algebra(n: int, max_grade: int) -> CurrentAlgebra:
    return CurrentAlgebra(n, max_grade)


def _report(check: str, params: dict, ok: bool, witness=None) -> dict:
    out = {"check": check, "params": params, "pass": ok}
    if witness is not None:
        out["witness"] = witness
    return out


def verify_basis(n: int, max_grade: int) -> dict:
    """Independence, homogeneity, sigma-invariance and bracket closure."""
    alg = get_algebra(n, max_grade)
    params = {"n": n, "max_grade": max_grade}
    # homogeneity against the scaling-element chart
    for e in alg.basis:
        for (a, b, k) in e.matrix.flatten():
            if entry_grade(n, a, b, k) != e.grade:
                raise VerificationFailed(f"{e} has an entry E[{a},{b}]t^{k} of the wrong grade")
        if e.matrix.is_zero():
            raise VerificationFailed(f"{e} is zero")
        if sigma(n, e.matrix) != e.matrix:
            raise VerificationFailed(f"{e} is not fixed by sigma")
    space = Subspace(e.matrix.flatten() for e in alg.basis)
    if space.dim != len(alg.basis):
        raise VerificationFailed(f"rank {space.dim} < {len(alg.basis)}: basis is dependent")
    pairs = 0
    for x in alg.basis:
        for y in alg.basis:
            if x.grade + y.grade > max_grade:
                continue
            alg.structure_constants(x.label, y.label)
            pairs += 1
    dims = [len(alg.of_grade(g)) for g in range(max_grade + 1)]
    return _report("basis", params, True, {"size": len(alg.basis), "grade_dims": dims,
                                            "brackets_checked": pairs})


def verify_rank_one_subalgebras(n: int, max_grade: int = 6) -> dict:
    """Bracket tables of the rank-one families match their models.

    Short roots: e_r = x_{a + r delta}, f_r = x_{-a + r delta} and
    h_r = [e_r, f_0] must satisfy the relations of sl_2 (x) C[t].
    Long roots: the family {x_{+-a + 2r delta}, x_{(+-a + (2r+1) delta)/2}} must
    have the bracket table of the n = 1 algebra, with each generator matched
    to its n = 1 namesake up to a sign fixed on the generator.
    """
    alg = get_algebra(n, max_grade)
    checked = []
    for pos in positive_roots(n):
        if pos.length_class == SHORT:
            _check_short(alg, pos)
        else:
            _check_long(alg, pos)
        checked.append(str(pos))
    return _report("rank_one", {"n": n, "max_grade": max_grade}, True, {"roots": checked})


def _check_short(alg: CurrentAlgebra, pos: FiniteRoot) -> None:
    n, G = alg.n, alg.max_grade
    R = G // 2
    e = {r: alg.by_label[AffineRoot(2 * r, pos)].matrix for r in range(R + 1)}
    f = {r: alg.by_label[AffineRoot(2 * r, -pos)].matrix for r in range(R + 1)}
    h = {r: bracket(e[r], f[0]) for r in range(R + 1)}
    for r in range(R + 1):
        for s in range(R + 1 - r):
            want = {
                "[e,f]": (bracket(e[r], f[s]), h[r + s]),
                "[h,e]": (bracket(h[r], e[s]), e[r + s] * 2),
                "[h,f]": (bracket(h[r], f[s]), f[r + s] * -2),
                "[e,e]": (bracket(e[r], e[s]), LoopMatrix(2 * n + 1)),
                "[f,f]": (bracket(f[r], f[s]), LoopMatrix(2 * n + 1)),
                "[h,h]": (bracket(h[r], h[s]), LoopMatrix(2 * n + 1)),
            }
            for name, (got, exp) in want.items():
                if got != exp:
                    raise VerificationFailed(f"sl2[t] relation {name} fails for {pos} at ({r},{s})")


def _check_long(alg: CurrentAlgebra, pos: FiniteRoot) -> None:
    n, G = alg.n, alg.max_grade
    (i,) = pos.support()
    small = get_algebra(1, G)
    size = 2 * n + 1
    idx = {1: i, 2: n + 1, 3: 2 * n + 2 - i}
    # diagonal conjugation absorbing the (-1)^i of the half-root formula
    d = {1: 1, 2: 1, 3: (-1) ** (i + 1)}

    def embed(m: LoopMatrix) -> LoopMatrix:
        return LoopMatrix(size, {(idx[a], idx[b]): p * (d[a] * d[b])
                                 for (a, b), p in m.items()}, check_trace=False)

    def family(n_: int):
        lr, hr = long_root(n_, 1 if n_ == 1 else i), half_root(n_, 1 if n_ == 1 else i)
        out = []
        for g in range(G + 1):
            for s in (1, -1):
                if g % 4 == 0:
                    out.append(AffineRoot(g, lr if s > 0 else -lr))
                if g % 2 == 1:
                    out.append(AffineRoot(g, hr if s > 0 else -hr))
        return out

    fam1, famn = family(1), family(n)
    signs = {}
    for l1, ln in zip(fam1, famn):
        a, b = embed(small.by_label[l1].matrix), alg.by_label[ln].matrix
        if a == b:
            signs[ln] = 1
        elif a == -b:
            signs[ln] = -1
        else:
            raise VerificationFailed(f"{ln} does not correspond to an n=1 generator")
    for l1, ln in zip(fam1, famn):
        for m1, mn in zip(fam1, famn):
            if l1.grade + m1.grade > G:
                continue
            got = bracket(alg.by_label[ln].matrix, alg.by_label[mn].matrix) * (signs[ln] * signs[mn])
            want = embed(bracket(small.by_label[l1].matrix, small.by_label[m1].matrix))
            if got != want:
                raise VerificationFailed(f"bracket [{ln}, {mn}] differs from the n=1 model")


# dumps --------------------------------------------------------------------

def basis_records(basis: list[CurrentBasisElement]) -> list[dict]:
    return [
        {
            "label": str(e.label),
            "grade": e.grade,
            "entries": [[a, b, str(p)] for (a, b), p in e.matrix.items()],
        }
        for e in basis
    ]


def basis_json(basis: list[CurrentBasisElement]) -> str:
    return json.dumps(basis_records(basis), indent=1, sort_keys=True)


def basis_text(basis: list[CurrentBasisElement]) -> str:
    lines = []
    for e in basis:
        ents = "; ".join(f"({a},{b}): {p}" for (a, b), p in e.matrix.items())
        lines.append(f"{e.label}\tgrade {e.grade}\t{ents}")
    return "\n".join(lines)


def structure_constant_records(alg: CurrentAlgebra) -> list[dict]:
    out = []
    for (a, b), c in sorted(alg._consts.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key())):
        out.append({"a": str(a), "b": str(b),
                    "bracket": [[str(k), format_rational(v)] for k, v in c.items()]})
    return out
