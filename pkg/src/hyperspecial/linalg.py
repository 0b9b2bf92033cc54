"""Sparse exact linear algebra over Q.

Vectors are ``dict[key, Fraction]`` with no zero values; keys are any
sortable hashables (ints for module coordinates, tuples for flattened
matrix coordinates).  Matrices acting on modules are ``dict[int,
dict[int, Fraction]]`` keyed column-first: ``M[j]`` is the image of the
j-th basis vector.  Column storage makes matrix-vector products cheap for
the very sparse action matrices used throughout.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable

Vec = dict
Mat = dict  # column j -> sparse vector


# vectors ------------------------------------------------------------------

def vadd(a: Vec, b: Vec, c=1) -> Vec:
    """a + c*b."""
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + c * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vscale(a: Vec, c) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def vsum(vs: Iterable[Vec]) -> Vec:
    out: Vec = {}
    for v in vs:
        for k, x in v.items():
            s = out.get(k, 0) + x
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def basis_vector(i, c=1) -> Vec:
    return {i: Fraction(c)}


# matrices -----------------------------------------------------------------

def matvec(m: Mat, v: Vec) -> Vec:
    out: Vec = {}
    for j, x in v.items():
        col = m.get(j)
        if not col:
            continue
        for i, y in col.items():
            s = out.get(i, 0) + x * y
            if s:
                out[i] = s
            else:
                out.pop(i, None)
    return out


def matmul(a: Mat, b: Mat) -> Mat:
    out = {}
    for j, col in b.items():
        c = matvec(a, col)
        if c:
            out[j] = c
    return out


def madd(a: Mat, b: Mat, c=1) -> Mat:
    out = {j: dict(col) for j, col in a.items()}
    for j, col in b.items():
        r = vadd(out.get(j, {}), col, c)
        if r:
            out[j] = r
        else:
            out.pop(j, None)
    return out


def mscale(a: Mat, c) -> Mat:
    if not c:
        return {}
    return {j: vscale(col, c) for j, col in a.items()}


def commutator(a: Mat, b: Mat) -> Mat:
    return madd(matmul(a, b), matmul(b, a), -1)


def identity(dim: int) -> Mat:
    return {i: {i: Fraction(1)} for i in range(dim)}


def flatten(m: Mat) -> Vec:
    return {(i, j): x for j, col in m.items() for i, x in col.items()}


def mat_is_zero(m: Mat) -> bool:
    return not any(m.values())


def to_dense(m: Mat, dim: int) -> list[list[Fraction]]:
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for j, col in m.items():
        for i, x in col.items():
            rows[i][j] = x
    return rows


def kron_sum(mats: list[Mat], dims: list[int]) -> Mat:
    """Leibniz action A1 (x) 1 (x) ... + 1 (x) A2 (x) ... on the tensor product.

    Tensor basis index is mixed-radix with the last factor varying fastest.
    """
    total = 1
    for d in dims:
        total *= d
    strides = []
    s = 1
    for d in reversed(dims):
        strides.append(s)
        s *= d
    strides.reverse()
    out: Mat = {}
    for idx in range(total):
        col: Vec = {}
        for f, (m, d, st) in enumerate(zip(mats, dims, strides)):
            digit = (idx // st) % d
            c = m.get(digit)
            if not c:
                continue
            base = idx - digit * st
            for i, x in c.items():
                k = base + i * st
                v = col.get(k, 0) + x
                if v:
                    col[k] = v
                else:
                    col.pop(k, None)
        if col:
            out[idx] = col
    return out


# subspaces ----------------------------------------------------------------

class Subspace:
    """A subspace of Q^keys kept in reduced row echelon form.

    Basis vectors are normalized to 1 at their pivot and vanish at every
    other pivot, so coordinates of a member vector are simply its values at
    the pivots.  Pivot order is the sort order of keys, which makes the
    echelon form (and hence everything built on it) deterministic.
    """

    def __init__(self, vectors: Iterable[Vec] = ()):
        self.rows: dict[Hashable, Vec] = {}  # pivot -> basis vector
        for v in vectors:
            self.add(v)

    def copy(self) -> "Subspace":
        s = Subspace()
        s.rows = dict(self.rows)
        return s

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def pivots(self) -> list:
        return sorted(self.rows)

    def basis(self) -> list[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]

    def reduce(self, v: Vec) -> Vec:
        """Remainder of v after eliminating all pivots."""
        r = dict(v)
        for p in [p for p in r if p in self.rows]:
            c = r.get(p)
            if c:
                r = vadd(r, self.rows[p], -c)
        return r

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def add(self, v: Vec) -> bool:
        """Insert v; return True when the dimension grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        r = vscale(r, 1 / Fraction(r[p]))
        for q, row in list(self.rows.items()):
            c = row.get(p)
            if c:
                self.rows[q] = vadd(row, r, -c)
        self.rows[p] = r
        return True

    def coords(self, v: Vec) -> dict:
        """Coordinates of a member v, keyed by pivot."""
        return {p: v[p] for p in self.rows if p in v}


def rank(vectors: Iterable[Vec]) -> int:
    return Subspace(vectors).dim


def solve_in_span(vectors: list[Vec], target: Vec) -> list[Fraction] | None:
    """Coefficients c with sum c_i vectors[i] == target, or None.

    Each vector is tagged with an identity coordinate before row reduction;
    the tag part of the reduced target is then minus the combination.
    """
    space = Subspace()
    for i, v in enumerate(vectors):
        w = {(0, k): x for k, x in v.items()}
        w[(1, i)] = Fraction(1)
        space.add(w)
    r = space.reduce({(0, k): x for k, x in target.items()})
    if any(k[0] == 0 for k in r):
        return None
    coeffs = [Fraction(0)] * len(vectors)
    for (_, i), x in r.items():
        coeffs[i] = -x
    return coeffs
