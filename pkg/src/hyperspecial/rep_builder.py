"""Concrete finite-dimensional modules for the current algebra.

A :class:`ModuleInstance` stores weights (and optionally grades) of a basis
of weight vectors and produces the action matrix of any basis label on
demand, memoized.  Evaluation modules compute actions straight from the
loop matrices, so they are not tied to a grade truncation.
"""
from __future__ import annotations

import json
import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb
from typing import Callable, Iterable, Sequence

from .affine_roots import (
    AffineRoot, DominantWeight, cartan_label, dynkin_from_eps, enumerate_affine_roots,
    eps_from_dynkin, positive_roots,
)
from .current_algebra import root_matrix
from .exact_arith import as_rational
from .linalg import Mat, Subspace, Vec, kron_sum, matvec, vadd

Label = AffineRoot


class LabelMismatch(ValueError):
    pass


class NotACharacter(ValueError):
    pass


@lru_cache(maxsize=None)
def _cached_root_matrix(n: int, label: AffineRoot):
    return root_matrix(n, label)


# sl_{2n+1} exterior powers --------------------------------------------------

@dataclass(frozen=True)
class ExteriorPower:
    """Lambda^i C^N with basis the sorted i-subsets of {1..N}."""

    size: int
    i: int

    @property
    def subsets(self) -> list[tuple[int, ...]]:
        return _subsets(self.size, self.i)

    @property
    def dim(self) -> int:
        return comb(self.size, self.i)

    def index(self, s: tuple[int, ...]) -> int:
        return _subset_index(self.size, self.i)[s]

    def elementary(self, a: int, b: int) -> Mat:
        """The action of E_{a,b} (1-based) as a column-sparse matrix."""
        return _elementary(self.size, self.i, a, b)


@lru_cache(maxsize=None)
def _subsets(size: int, i: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, size + 1), i))


@lru_cache(maxsize=None)
def _subset_index(size: int, i: int) -> dict[tuple[int, ...], int]:
    return {s: k for k, s in enumerate(_subsets(size, i))}


@lru_cache(maxsize=None)
def _elementary(size: int, i: int, a: int, b: int) -> Mat:
    idx = _subset_index(size, i)
    out: Mat = {}
    for s, col in idx.items():
        if b not in s:
            continue
        if a == b:
            out[col] = {col: Fraction(1)}
            continue
        if a in s:
            continue
        between = sum(1 for x in s if min(a, b) < x < max(a, b))
        t = tuple(sorted((set(s) - {b}) | {a}))
        out[col] = {idx[t]: Fraction((-1) ** between)}
    return out


def _sl_weight(subset: Sequence[int], n: int) -> tuple[int, ...]:
    """Eigenvalues of h_j = H_j + H_{2n+1-j} (1 <= j <= n) on e_S."""
    s = set(subset)
    out = []
    for j in range(1, n + 1):
        v = 0
        for a in (j, 2 * n + 1 - j):
            v += (a in s) - (a + 1 in s)
        out.append(v)
    return tuple(out)


def sl_weight_full(subset: Sequence[int], size: int) -> tuple[int, ...]:
    """Eigenvalues of H_1..H_{size-1} on e_S."""
    s = set(subset)
    return tuple((a in s) - (a + 1 in s) for a in range(1, size))


# modules ------------------------------------------------------------------

class ModuleInstance:
    """A finite-dimensional module with lazily computed action matrices.

    ``provider(label)`` returns the column-sparse action matrix of a basis
    label.  Results are memoized; the memo is guarded so concurrent readers
    see complete matrices.
    """

    def __init__(self, n: int, dim: int, weights: list[tuple[int, ...]],
                 provider: Callable[[Label], Mat], grades: list[int] | None = None,
                 cyclic_index: int | None = None, name: str = "",
                 max_label_grade: int | None = None):
        if len(weights) != dim or (grades is not None and len(grades) != dim):
            raise ValueError("weights/grades do not match dim")
        self.n = n
        self.dim = dim
        self.weights = list(weights)
        self.grades = None if grades is None else list(grades)
        self.cyclic_index = cyclic_index
        self.name = name
        self.max_label_grade = max_label_grade
        self._provider = provider
        self._memo: dict[Label, Mat] = {}
        self._lock = threading.Lock()

    def act(self, label: Label) -> Mat:
        m = self._memo.get(label)
        if m is None:
            if self.max_label_grade is not None and label.grade > self.max_label_grade:
                raise LabelMismatch(f"{label} is beyond the module's grade range")
            m = self._provider(label)
            with self._lock:
                self._memo[label] = m
        return m

    def apply(self, label: Label, v: Vec) -> Vec:
        return matvec(self.act(label), v)

    def apply_word(self, word: Sequence[Label], v: Vec) -> Vec:
        """Apply labels right to left (the last label acts first)."""
        for lab in reversed(word):
            v = self.apply(lab, v)
            if not v:
                break
        return v

    def cyclic_vector(self) -> Vec:
        if self.cyclic_index is None:
            raise ValueError("module has no distinguished cyclic vector")
        return {self.cyclic_index: Fraction(1)}

    @property
    def is_graded(self) -> bool:
        return self.grades is not None

    def character(self) -> "GradedCharacter":
        grades = self.grades or [0] * self.dim
        return GradedCharacter(Counter(zip(map(tuple, self.weights), grades)))

    def __repr__(self):
        return f"ModuleInstance({self.name or 'module'}, dim={self.dim})"


def label_weight(n: int, label: Label) -> tuple[int, ...]:
    if label.finite is None:
        return (0,) * n
    return label.dynkin()


def fundamental_rep(n: int, i: int) -> ExteriorPower:
    """The i-th exterior power of the natural sl_{2n+1}-module."""
    if not 1 <= i <= 2 * n:
        from .loop_lie import IndexOutOfRange
        raise IndexOutOfRange(f"no fundamental representation {i} for n={n}")
    return ExteriorPower(2 * n + 1, i)


def _sl_image(rep: ExteriorPower, entries: dict[tuple[int, int], Fraction]) -> Mat:
    out: Mat = {}
    for (a, b), c in entries.items():
        for col, vec in rep.elementary(a, b).items():
            out[col] = vadd(out.get(col, {}), vec, c)
            if not out[col]:
                del out[col]
    return out


def evaluation_module(n: int, rep: ExteriorPower, z) -> ModuleInstance:
    """Pull back an exterior power along t -> z (z nonzero)."""
    z = as_rational(z)
    if z == 0:
        from .exact_arith import EvalAtZero
        raise EvalAtZero("evaluation point must be nonzero")
    weights = [_sl_weight(s, n) for s in rep.subsets]

    def provider(label: Label) -> Mat:
        return _sl_image(rep, _cached_root_matrix(n, label).evaluate(z))

    return ModuleInstance(n, rep.dim, weights, provider, cyclic_index=0,
                          name=f"Lambda^{rep.i}(z={z})")


def tensor(ms: Sequence[ModuleInstance]) -> ModuleInstance:
    """Tensor product with the Leibniz action; the last factor varies fastest."""
    if not ms:
        raise ValueError("empty tensor product; use trivial_module")
    n = ms[0].n
    if any(m.n != n for m in ms):
        raise LabelMismatch("factors belong to different algebras")
    dims = [m.dim for m in ms]
    weights = []
    grades = [] if all(m.is_graded for m in ms) else None
    for idx in product(*[range(d) for d in dims]):
        weights.append(tuple(sum(w) for w in zip(*[m.weights[k] for m, k in zip(ms, idx)])))
        if grades is not None:
            grades.append(sum(m.grades[k] for m, k in zip(ms, idx)))
    cyc = None
    if all(m.cyclic_index is not None for m in ms):
        cyc = 0
        for m in ms:
            cyc = cyc * m.dim + m.cyclic_index
    limits = [m.max_label_grade for m in ms if m.max_label_grade is not None]

    def provider(label: Label) -> Mat:
        return kron_sum([m.act(label) for m in ms], dims)

    return ModuleInstance(n, len(weights), weights, provider, grades, cyc,
                          name=" (x) ".join(m.name for m in ms),
                          max_label_grade=min(limits) if limits else None)


def trivial_module(n: int) -> ModuleInstance:
    return ModuleInstance(n, 1, [(0,) * n], lambda label: {}, [0], 0, name="trivial")


def grade_zero_labels(n: int) -> list[Label]:
    return (enumerate_affine_roots(n, "+", 0) + enumerate_affine_roots(n, "-", 0)
            + [cartan_label(i, 0) for i in range(1, n + 1)])


def labels_up_to(n: int, max_grade: int) -> list[Label]:
    labs = (enumerate_affine_roots(n, "+", max_grade) + enumerate_affine_roots(n, "-", max_grade)
            + [cartan_label(i, r) for r in range(max_grade // 2 + 1) for i in range(1, n + 1)])
    labs.sort(key=AffineRoot.sort_key)
    return labs


class _Sub:
    """Bookkeeping for an invariant subspace spanned by weight vectors."""

    def __init__(self, parent: ModuleInstance, space: Subspace):
        self.parent = parent
        self.space = space
        self.pivots = space.pivots()
        self.pos = {p: k for k, p in enumerate(self.pivots)}
        self.vectors = [space.rows[p] for p in self.pivots]

    def coords(self, v: Vec) -> Vec:
        return {self.pos[p]: c for p, c in v.items() if p in self.pos}

    def provider(self, label: Label) -> Mat:
        out: Mat = {}
        for k, w in enumerate(self.vectors):
            img = self.parent.apply(label, w)
            if img:
                out[k] = self.coords(img)
        return out


def cyclic_span(m: ModuleInstance, v: Vec | int, labels: Sequence[Label],
                check: bool = False) -> ModuleInstance:
    """The smallest subspace containing v and stable under ``labels``.

    Starting from a weight vector and applying weight-homogeneous labels,
    every vector of the echelon basis is itself a weight vector, so the
    submodule inherits weights (and grades) read at the pivot coordinates.
    """
    if isinstance(v, int):
        v = {v: Fraction(1)}
    space = Subspace()
    frontier = [v] if v and space.add(v) else []
    while frontier:
        new = []
        for w in frontier:
            for lab in labels:
                img = m.apply(lab, w)
                if img and space.add(img):
                    new.append(img)
        frontier = new
    return submodule(m, space, v, check=check, labels=labels)


def submodule(m: ModuleInstance, space: Subspace, v: Vec | None = None, check: bool = False,
              labels: Sequence[Label] = ()) -> ModuleInstance:
    sub = _Sub(m, space)
    weights = [m.weights[p] for p in sub.pivots]
    grades = None if m.grades is None else [m.grades[p] for p in sub.pivots]
    cyc = None
    if v:
        c = sub.coords(v)
        if len(c) == 1 and next(iter(c.values())) == 1:
            cyc = next(iter(c))
    out = ModuleInstance(m.n, len(sub.pivots), weights, sub.provider, grades, cyc,
                         name=f"span in {m.name}", max_label_grade=m.max_label_grade)
    out.embedding = sub  # type: ignore[attr-defined]
    if check:
        for lab in labels:
            for w in sub.vectors:
                if not space.contains(m.apply(lab, w)):
                    raise AssertionError(f"subspace not stable under {lab}")
    return out


def restricted_irreducible(n: int, lam: DominantWeight) -> ModuleInstance:
    """V(lambda) for the grade-zero algebra, ungraded.

    Realized as the grade-zero cyclic span of the tensor of top vectors in
    the exterior powers (Lambda^i)^{(x) lambda_i}, all evaluated at t = 1.
    """
    factors = []
    for i, c in enumerate(lam.coeffs, start=1):
        factors += [evaluation_module(n, fundamental_rep(n, i), 1)] * c
    if not factors:
        return trivial_module(n)
    big = tensor(factors)
    return cyclic_span(big, big.cyclic_index, grade_zero_labels(n))


def ev0_pullback(m: ModuleInstance) -> ModuleInstance:
    """Let positive-grade labels act by zero; every vector gets grade 0."""
    def provider(label: Label) -> Mat:
        return m.act(label) if label.grade == 0 else {}

    return ModuleInstance(m.n, m.dim, m.weights, provider, [0] * m.dim, m.cyclic_index,
                          name=f"ev0*({m.name})")


# characters of the finite algebra -------------------------------------------

@dataclass
class GradedCharacter:
    entries: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def grades(self) -> list[int]:
        return sorted({g for _, g in self.entries})

    def at_grade(self, g: int) -> Counter:
        return Counter({w: c for (w, gg), c in self.entries.items() if gg == g and c})

    def grade_summed(self) -> Counter:
        out: Counter = Counter()
        for (w, _), c in self.entries.items():
            out[w] += c
        return out

    def records(self) -> list[dict]:
        return [{"weight": list(w), "grade": g, "mult": c}
                for (w, g), c in sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))
                if c]

    def to_json(self) -> str:
        return json.dumps(self.records(), sort_keys=True)

    @classmethod
    def from_json(cls, s: str) -> "GradedCharacter":
        return cls(Counter({(tuple(r["weight"]), r["grade"]): r["mult"] for r in json.loads(s)}))

    def __eq__(self, other):
        if not isinstance(other, GradedCharacter):
            return NotImplemented
        return +self.entries == +other.entries


def weyl_dim(n: int, lam: DominantWeight) -> int:
    """Weyl dimension formula for sp_{2n}, exactly."""
    rho = [n - k for k in range(n)]  # eps coordinates n, n-1, ..., 1
    lr = [a + b for a, b in zip(lam.eps(), rho)]
    num = Fraction(1)
    for pos in positive_roots(n):
        co = [Fraction(c, 2) for c in pos.coords]
        sq = sum(c * c for c in co)
        cor = [2 * c / sq for c in co]
        num *= sum(a * b for a, b in zip(lr, cor)) / sum(a * b for a, b in zip(rho, cor))
    assert num.denominator == 1
    return int(num)


def _signed_permutations(n: int):
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            sgn = _perm_sign(perm) * (-1) ** signs.count(-1)
            yield perm, signs, sgn


def _perm_sign(p) -> int:
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, L = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            L += 1
        if L % 2 == 0:
            s = -s
    return s


@lru_cache(maxsize=None)
def _kostant(n: int, target: tuple[int, ...]) -> int:
    """Number of ways to write ``target`` (eps coordinates) as a sum of positive roots."""
    roots = [tuple(c // 2 for c in r.coords) for r in positive_roots(n)]
    return _kostant_rec(tuple(roots), target, 0)


@lru_cache(maxsize=None)
def _kostant_rec(roots: tuple, target: tuple, k: int) -> int:
    if not any(target):
        return 1
    if k == len(roots):
        return 0
    # positive roots have non-negative partial sums from the left
    run = 0
    for c in target:
        run += c
        if run < 0:
            return 0
    total = 0
    r = roots[k]
    t = target
    while True:
        total += _kostant_rec(roots, t, k + 1)
        t = tuple(a - b for a, b in zip(t, r))
        run, ok = 0, True
        for c in t:
            run += c
            if run < 0:
                ok = False
                break
        if not ok:
            break
    return total


@lru_cache(maxsize=None)
def _weyl_character_eps(n: int, lam_eps: tuple[int, ...]) -> tuple:
    rho = tuple(n - k for k in range(n))
    lr = tuple(a + b for a, b in zip(lam_eps, rho))
    # candidate weights: dominated by lambda, bounded box
    bound = sum(abs(x) for x in lam_eps)
    mults: Counter = Counter()
    images = []
    for perm, signs, sgn in _signed_permutations(n):
        w = tuple(signs[k] * lr[perm[k]] for k in range(n))
        images.append((tuple(a - b for a, b in zip(w, rho)), sgn))
    for mu in product(range(-bound, bound + 1), repeat=n):
        if sum(abs(x) for x in mu) > bound or (sum(mu) - sum(lam_eps)) % 2:
            continue
        m = 0
        for img, sgn in images:
            diff = tuple(a - b for a, b in zip(img, mu))
            m += sgn * _kostant(n, diff)
        if m:
            mults[mu] = m
    return tuple(sorted(mults.items()))


def weyl_character(n: int, lam: DominantWeight) -> GradedCharacter:
    """The character of V(lambda) at grade 0 (Kostant multiplicity formula)."""
    out: Counter = Counter()
    for mu, m in _weyl_character_eps(n, lam.eps()):
        out[(dynkin_from_eps(mu), 0)] = m
    return GradedCharacter(out)


def _lex_key(eps: tuple[int, ...]):
    return eps


def g_decompose(ch: GradedCharacter, n: int) -> dict[int, dict[DominantWeight, int]]:
    """Multiplicities of irreducibles V(lambda) in each graded piece.

    Peels off the lexicographically largest weight (in eps coordinates),
    which is always dominant and maximal for dominance order.
    """
    out: dict[int, dict[DominantWeight, int]] = {}
    for g in ch.grades():
        rest = Counter({eps_from_dynkin(w): c for w, c in ch.at_grade(g).items()})
        got: dict[DominantWeight, int] = {}
        while +rest:
            top = max(w for w, c in rest.items() if c)
            c = rest[top]
            if c < 0:
                raise NotACharacter(f"negative multiplicity at {top} in grade {g}")
            lam = DominantWeight(dynkin_from_eps(top))
            got[lam] = got.get(lam, 0) + c
            for mu, m in _weyl_character_eps(n, top):
                rest[mu] -= c * m
            if any(v < 0 for v in rest.values()):
                raise NotACharacter(f"peeling {lam} in grade {g} went negative")
            rest = +rest
        out[g] = got
    return out
