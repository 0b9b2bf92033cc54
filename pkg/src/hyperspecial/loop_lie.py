"""The loop algebra of sl_{2n+1} as sparse Laurent-polynomial matrices.

Matrix indices are 1-based throughout to match the usual E_{a,b} notation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from .exact_arith import LaurentPoly, lp_eval, lp_negate_variable
from .linalg import Subspace


class IndexOutOfRange(ValueError):
    pass


class SizeMismatch(ValueError):
    pass


class VerificationFailed(AssertionError):
    """A structural identity did not hold; the message names the witness."""


class LoopMatrix:
    """A trace-zero matrix with Laurent-polynomial entries."""

    __slots__ = ("size", "_e", "_hash")

    def __init__(self, size: int, entries: Mapping[tuple[int, int], LaurentPoly] | None = None,
                 check_trace: bool = True):
        self.size = size
        e = {}
        for (a, b), p in (entries or {}).items():
            if not (1 <= a <= size and 1 <= b <= size):
                raise IndexOutOfRange(f"entry ({a},{b}) outside size {size}")
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly.const(p)
            if p:
                e[(a, b)] = p
        self._e = e
        self._hash = None
        if check_trace:
            tr = LaurentPoly()
            for (a, b), p in e.items():
                if a == b:
                    tr = tr + p
            if tr:
                raise ValueError(f"trace {tr} is not zero")

    @classmethod
    def elementary(cls, size: int, a: int, b: int, p=1) -> "LoopMatrix":
        if not isinstance(p, LaurentPoly):
            p = LaurentPoly.const(p)
        return cls(size, {(a, b): p}, check_trace=(a != b))

    @property
    def entries(self) -> dict[tuple[int, int], LaurentPoly]:
        return dict(self._e)

    def items(self) -> Iterator[tuple[tuple[int, int], LaurentPoly]]:
        return iter(sorted(self._e.items()))

    def __getitem__(self, key) -> LaurentPoly:
        return self._e.get(key, LaurentPoly())

    def nnz(self) -> int:
        return len(self._e)

    def is_zero(self) -> bool:
        return not self._e

    def __bool__(self):
        return bool(self._e)

    def _check(self, other):
        if not isinstance(other, LoopMatrix):
            return NotImplemented
        if other.size != self.size:
            raise SizeMismatch(f"{self.size} vs {other.size}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        e = dict(self._e)
        for k, p in other._e.items():
            e[k] = e.get(k, LaurentPoly()) + p
        return LoopMatrix(self.size, e, check_trace=False)

    def __neg__(self):
        return LoopMatrix(self.size, {k: -p for k, p in self._e.items()}, check_trace=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LoopMatrix":
        """Multiply by a rational or by a Laurent polynomial."""
        return LoopMatrix(self.size, {k: p * c for k, p in self._e.items()}, check_trace=False)

    def __mul__(self, c):
        if isinstance(c, LoopMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def matmul(self, other: "LoopMatrix") -> dict[tuple[int, int], LaurentPoly]:
        """Plain matrix product (not trace-free in general), as raw entries."""
        by_row: dict[int, list[tuple[int, LaurentPoly]]] = {}
        for (b, c), q in other._e.items():
            by_row.setdefault(b, []).append((c, q))
        out: dict[tuple[int, int], LaurentPoly] = {}
        for (a, b), p in self._e.items():
            for c, q in by_row.get(b, ()):
                out[(a, c)] = out.get((a, c), LaurentPoly()) + p * q
        return out

    def __eq__(self, other):
        if not isinstance(other, LoopMatrix):
            return NotImplemented
        return self.size == other.size and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.size, frozenset(self._e.items())))
        return self._hash

    def evaluate(self, z) -> dict[tuple[int, int], Fraction]:
        """Entrywise value at t = z, as a sparse 1-based scalar matrix."""
        out = {}
        for k, p in self._e.items():
            v = lp_eval(p, z)
            if v:
                out[k] = v
        return out

    def flatten(self) -> dict[tuple[int, int, int], Fraction]:
        """Coordinates over Q: key (row, col, t-exponent)."""
        return {(a, b, k): c for (a, b), p in self._e.items() for k, c in p.items()}

    def t_degrees(self) -> set[int]:
        return {k for p in self._e.values() for k, _ in p.items()}

    def __str__(self):
        if not self._e:
            return "0"
        return " + ".join(f"({p})E[{a},{b}]" for (a, b), p in self.items())

    def __repr__(self):
        return f"LoopMatrix({self.size}, {self})"


def bracket(a: LoopMatrix, b: LoopMatrix) -> LoopMatrix:
    if a.size != b.size:
        raise SizeMismatch(f"{a.size} vs {b.size}")
    ab = a.matmul(b)
    for k, p in b.matmul(a).items():
        ab[k] = ab.get(k, LaurentPoly()) - p
    return LoopMatrix(a.size, ab, check_trace=False)


@dataclass(frozen=True, order=True)
class ChevalleyLabel:
    """X^+_{i,j}, X^-_{i,j} (1 <= i <= j <= 2n) or H_i (kind "H", j unused)."""

    kind: str  # "+", "-" or "H"
    i: int
    j: int = 0

    def __str__(self):
        if self.kind == "H":
            return f"H_{self.i}"
        return f"X{self.kind}_{self.i},{self.j}"


def _check_label(n: int, label: ChevalleyLabel) -> None:
    top = 2 * n
    if label.kind == "H":
        ok = 1 <= label.i <= top
    elif label.kind in "+-":
        ok = 1 <= label.i <= label.j <= top
    else:
        ok = False
    if not ok:
        raise IndexOutOfRange(f"{label} is not a Chevalley label for n={n}")


def chevalley(n: int, label: ChevalleyLabel, p=1) -> LoopMatrix:
    """The Chevalley basis element for ``label`` tensored with ``p``."""
    if n < 1:
        raise IndexOutOfRange("n must be at least 1")
    _check_label(n, label)
    size = 2 * n + 1
    if not isinstance(p, LaurentPoly):
        p = LaurentPoly.const(p)
    i, j = label.i, label.j
    if label.kind == "+":
        return LoopMatrix(size, {(i, j + 1): p})
    if label.kind == "-":
        return LoopMatrix(size, {(j + 1, i): p})
    return LoopMatrix(size, {(i, i): p, (i + 1, i + 1): -p})


def X(n: int, sign: str, i: int, j: int, p=1) -> LoopMatrix:
    return chevalley(n, ChevalleyLabel(sign, i, j), p)


def H(n: int, i: int, p=1) -> LoopMatrix:
    return chevalley(n, ChevalleyLabel("H", i), p)


def sigma_signs(n: int) -> tuple[int, ...]:
    """Diagonal signs of the antidiagonal matrix J, index 1..2n+1.

    The standard alternating choice (-1)^(k+1) is used, except that for odd n
    the middle sign is flipped.  That composite of the standard involution
    with an inner diagonal automorphism is what fixes every element of the
    explicit basis (the half-root elements and x_0^+ included) for both
    parities of n.
    """
    size = 2 * n + 1
    eps = [0] + [(-1) ** (k + 1) for k in range(1, size + 1)]
    if n % 2 == 1:
        eps[n + 1] = -eps[n + 1]
    return tuple(eps)


def sigma(n: int, a: LoopMatrix) -> LoopMatrix:
    """X (x) p(t)  ->  (-J X^T J^-1) (x) p(-t)."""
    size = 2 * n + 1
    if a.size != size:
        raise SizeMismatch(f"matrix size {a.size} does not match n={n}")
    eps = sigma_signs(n)
    out = {}
    for (r, c), p in a._e.items():
        r2, c2 = size + 1 - c, size + 1 - r
        out[(r2, c2)] = lp_negate_variable(p) * (-eps[r2] * eps[c2])
    return LoopMatrix(size, out, check_trace=False)


def sigma0(n: int, a: LoopMatrix) -> LoopMatrix:
    """The matrix part of sigma alone (no substitution t -> -t)."""
    return sigma(n, LoopMatrix(a.size, {k: lp_negate_variable(p) for k, p in a._e.items()},
                               check_trace=False))


# generators of the finite part ---------------------------------------------

def finite_generators(n: int) -> dict[str, LoopMatrix]:
    """x_i^+-, h_i (1 <= i <= n) as loop matrices, plus x_0^+-.

    x_n^+- carries the t^{+-1} factor, so these are the generators of the
    embedded copy of sp_{2n} (or sl_2 when n = 1).
    """
    g: dict[str, LoopMatrix] = {}
    t = LaurentPoly.monomial
    for i in range(1, n):
        for s in "+-":
            g[f"x{s}{i}"] = X(n, s, i, i) + X(n, s, 2 * n + 1 - i, 2 * n + 1 - i)
    for s, e in (("+", 1), ("-", -1)):
        g[f"x{s}{n}"] = X(n, s, n, n + 1, t(e))
    for i in range(1, n + 1):
        g[f"h{i}"] = H(n, i) + H(n, 2 * n + 1 - i)
    other = {"+": "-", "-": "+"}
    for s in "+-":
        g[f"x{s}0"] = X(n, other[s], 1, n) - X(n, other[s], n + 1, 2 * n)
    return g


def cartan_matrix_cn(n: int) -> list[list[int]]:
    """a_ij = alpha_j(h_i) for C_n (A_1 when n = 1), long root alpha_n."""
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = -1
            a[i + 1][i] = -1
    if n >= 2:
        a[n - 2][n - 1] = -2
    return a


def _proportional(a: LoopMatrix, b: LoopMatrix):
    """c with a == c*b, or None."""
    if a.is_zero():
        return 0
    if b.is_zero():
        return None
    fa, fb = a.flatten(), b.flatten()
    if set(fa) != set(fb):
        return None
    k = next(iter(fb))
    c = fa[k] / fb[k]
    return c if all(fa[x] == c * fb[x] for x in fb) else None


def lie_closure_dim(gens: list[LoopMatrix], limit: int = 10_000) -> int:
    """Dimension of the Lie algebra generated by ``gens`` (finite closure)."""
    space = Subspace()
    elems: list[LoopMatrix] = []
    for g in gens:
        if space.add(g.flatten()):
            elems.append(g)
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = bracket(g, a)
                if c and space.add(c.flatten()):
                    new.append(c)
                    if space.dim > limit:
                        raise VerificationFailed("closure exceeded limit")
        frontier = new
    return space.dim


def verify_generators(n: int) -> dict:
    """Chevalley and Serre relations of the finite generators, and generation.

    Returns a report dict; raises VerificationFailed on the first failure.
    """
    if n < 1:
        raise IndexOutOfRange("n must be at least 1")
    g = finite_generators(n)
    cm = cartan_matrix_cn(n)
    recovered = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        hi = g[f"h{i}"]
        for j in range(1, n + 1):
            c = _proportional(bracket(hi, g[f"x+{j}"]), g[f"x+{j}"])
            if c is None:
                raise VerificationFailed(f"[h{i}, x+{j}] is not a multiple of x+{j}")
            recovered[i - 1][j - 1] = int(c)
            c2 = _proportional(bracket(hi, g[f"x-{j}"]), g[f"x-{j}"])
            if c2 != -c:
                raise VerificationFailed(f"[h{i}, x-{j}] has the wrong eigenvalue")
        for j in range(1, n + 1):
            br = bracket(g[f"x+{i}"], g[f"x-{j}"])
            want = g[f"h{i}"] if i == j else LoopMatrix(2 * n + 1)
            if br != want:
                raise VerificationFailed(f"[x+{i}, x-{j}] != {'h' + str(i) if i == j else 0}")
    if recovered != cm:
        raise VerificationFailed(f"recovered Cartan matrix {recovered} is not type C_{n}")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            for s in "+-":
                y = g[f"x{s}{j}"]
                for _ in range(1 - cm[i - 1][j - 1]):
                    y = bracket(g[f"x{s}{i}"], y)
                if y:
                    raise VerificationFailed(f"Serre relation ad(x{s}{i})^{1 - cm[i-1][j-1]} x{s}{j} != 0")
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if bracket(g[f"h{i}"], g[f"h{j}"]):
                raise VerificationFailed(f"[h{i}, h{j}] != 0")
    # generation of sl_{2n+1} at t-degree 0 by x_0^+, ..., x_n^+
    plain = [g["x+0"]] + [g[f"x+{i}"] for i in range(1, n)] + [X(n, "+", n, n + 1)]
    dim = lie_closure_dim(plain)
    want = (2 * n + 1) ** 2 - 1
    if dim != want:
        raise VerificationFailed(f"x_0^+..x_n^+ generate a {dim}-dimensional algebra, expected {want}")
    for name, m in g.items():
        if sigma(n, m) != m:
            raise VerificationFailed(f"sigma does not fix {name}")
    return {"check": "generators", "params": {"n": n}, "pass": True,
            "witness": {"cartan_matrix": recovered, "generated_dim": dim}}
