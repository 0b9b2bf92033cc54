"""Local Weyl modules, Garland-type operators and the associated graded.

Conventions fixed by direct computation (see the notes in README):

* An evaluation factor at t = z contributes (1 - z u) to the generating
  series of P_{i,r}; a spec entry (i, z) therefore means pi_i(u) has the
  factor (1 - z u).
* For i < n, P_{i,r} = (-1)^r p(x_{a_i+d}^{(r)} x_{-a_i}^{(r)}).  For the long
  simple root the half-root operator is normalized as
  P_{n,r} = (-1)^r 2^r p(x_{(a_n+d)/2}^{(2r)} (e_n x_{-a_n})^{(r)}),
  e_n = (-1)^(n+1), which is the normalization under which the Garland
  recurrence and the generating series hold.
* The straightening identities carry an overall sign (-1)^r, and the
  half-root version weights x_{(-a+(2k+1)d)/2} by 2^(-k).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .affine_roots import (
    HALF, LONG, SHORT, AffineRoot, DominantWeight, FiniteRoot, cartan_label,
    demazure_exponent, enumerate_affine_roots, half_root, positive_roots, simple_root,
)
from .exact_arith import as_rational, lp_taylor, poly_from_roots
from .linalg import Mat, Subspace, Vec, vadd, vscale
from .rep_builder import (
    ModuleInstance, cyclic_span, ev0_pullback, evaluation_module, fundamental_rep,
    grade_zero_labels, labels_up_to, restricted_irreducible, tensor, trivial_module,
)


class GenericityViolated(ValueError):
    pass


class CyclicityFailed(AssertionError):
    pass


class NotHighestWeight(ValueError):
    pass


class NotCyclic(AssertionError):
    pass


class CheckFailed(AssertionError):
    """Base class for failed identity checks; carries the report."""

    def __init__(self, msg: str, report: dict | None = None):
        super().__init__(msg)
        self.report = report


class SeriesMismatch(CheckFailed):
    pass


class RecurrenceFailed(CheckFailed):
    pass


class StraighteningFailed(CheckFailed):
    pass


class RelationFailed(CheckFailed):
    pass


def report(check: str, params: dict, ok: bool, witness=None) -> dict:
    out = {"check": check, "params": params, "pass": ok}
    if witness is not None:
        out["witness"] = witness
    return out


# spec of points -------------------------------------------------------------

@dataclass
class PiSpec:
    """Fundamental factors (i, z, multiplicity) of pi_i(u) = prod (1 - z u)^m."""

    n: int
    factors: list[tuple[int, Fraction, int]] = field(default_factory=list)

    def __post_init__(self):
        self.factors = [(int(i), as_rational(z), int(m)) for i, z, m in self.factors]
        for i, z, m in self.factors:
            if not 1 <= i <= 2 * self.n:
                raise ValueError(f"fundamental index {i} out of range for n={self.n}")
            if z == 0 or m < 1:
                raise ValueError("points must be nonzero with positive multiplicity")

    @classmethod
    def from_weight(cls, n: int, lam: DominantWeight, points: Sequence) -> "PiSpec":
        """One factor (i, z) per unit of lambda(alpha_i^vee), points used in order."""
        pts = [as_rational(p) for p in points]
        need = sum(lam.coeffs)
        if len(pts) < need:
            raise ValueError(f"need {need} points, got {len(pts)}")
        out, k = [], 0
        for i, c in enumerate(lam.coeffs, start=1):
            for _ in range(c):
                out.append((i, pts[k], 1))
                k += 1
        return cls(n, out)

    def points(self) -> list[Fraction]:
        return [z for _, z, _ in self.factors]

    @property
    def generic(self) -> bool:
        pts = self.points()
        if any(m != 1 for _, _, m in self.factors):
            return False
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                if pts[a] == pts[b] or pts[a] == -pts[b]:
                    return False
        return True

    def weight(self) -> DominantWeight:
        """The restriction to the C_n Cartan of sum m * omega_i."""
        c = [0] * self.n
        for i, _, m in self.factors:
            j = i if i <= self.n else 2 * self.n + 1 - i
            c[j - 1] += m
        return DominantWeight(tuple(c))

    def series(self, i: int, length: int) -> list[Fraction]:
        """Coefficients of pi_i(u) pi_{2n+1-i}(-u), padded to ``length``."""
        a = poly_from_roots([(z, m) for j, z, m in self.factors if j == i])
        b = poly_from_roots([(-z, m) for j, z, m in self.factors if j == 2 * self.n + 1 - i])
        out = [Fraction(0)] * max(length, len(a) + len(b) - 1)
        for p, x in enumerate(a):
            for q, y in enumerate(b):
                out[p + q] += x * y
        return out[:length]

    def expected_dim(self) -> int:
        d = 1
        for i, _, m in self.factors:
            d *= comb(2 * self.n + 1, i) ** m
        return d


# word application -----------------------------------------------------------

def apply_divided_power(m: ModuleInstance, label: AffineRoot, r: int, v: Vec, scale=1) -> Vec:
    """(scale * x_label)^r v / r!."""
    if r < 0:
        raise ValueError("negative divided power")
    for _ in range(r):
        v = m.apply(label, v)
        if not v:
            return {}
    c = Fraction(scale) ** r / factorial(r)
    return vscale(v, c)


def half_sign(n: int, i: int) -> int:
    """Sign matching x_{+-2e_i + 2r d} to the rank-one A_2^(2) model."""
    return (-1) ** (i + 1)


def _check_highest(m: ModuleInstance, v: Vec, grade: int) -> None:
    for lab in enumerate_affine_roots(m.n, "+", grade):
        if m.apply(lab, v):
            raise NotHighestWeight(f"{lab} does not kill the vector")


def weight_part(m: ModuleInstance, w: Vec, weight) -> Vec:
    return {k: c for k, c in w.items() if m.weights[k] == weight}


def p_operator(m: ModuleInstance, root: FiniteRoot, r: int, v: Vec, half: bool = False,
               normalized: bool = True) -> Vec:
    """P_{root,r} v (or the half-root version) via the weight-space projection.

    ``root`` is a positive root.  With ``half`` the root must be long and the
    operator built from x_{(root+d)/2}^{(2r)} x_{-root}^{(r)}; ``normalized``
    applies the 2^r and sign normalization (see module docstring), otherwise
    the literal (-1)^r p(...) is returned.
    """
    n = m.n
    down = AffineRoot(0, -root)
    if half:
        if root.length_class != LONG:
            raise ValueError("half-root operators need a long root")
        (i,) = root.support()
        up = AffineRoot(1, half_root(n, i))
        eps = half_sign(n, i) if normalized else 1
        w = apply_divided_power(m, up, 2 * r, apply_divided_power(m, down, r, v, eps))
        c = Fraction((-1) ** r) * (2 ** r if normalized else 1)
    else:
        up = AffineRoot(2 if root.length_class == SHORT else 4, root)
        w = apply_divided_power(m, up, r, apply_divided_power(m, down, r, v))
        c = Fraction((-1) ** r)
    if not v:
        return {}
    k0 = next(iter(v))
    return vscale(weight_part(m, w, m.weights[k0]), c)


def apply_P(m: ModuleInstance, i: int, r: int, v: Vec, check: bool = True) -> Vec:
    """P_{i,r} on a highest-weight vector (i = n uses the half-root operator)."""
    n = m.n
    if not 1 <= i <= n:
        raise ValueError(f"no P_{{{i},r}} for n={n}")
    if r == 0:
        return dict(v)
    if check:
        _check_highest(m, v, 4 * r + 4)
    return p_operator(m, simple_root(n, i), r, v, half=(i == n))


def _scalar(v: Vec, w: Vec) -> Fraction:
    """c with w == c v (v nonzero)."""
    k = next(iter(v))
    c = w.get(k, Fraction(0)) / v[k]
    if vadd(w, v, -c):
        raise ValueError("vector is not a multiple of the highest-weight vector")
    return c


@dataclass
class PSeriesTable:
    n: int
    entries: dict[tuple[int, int], Fraction]

    def series(self, i: int) -> list[Fraction]:
        rs = sorted(r for (j, r) in self.entries if j == i)
        return [self.entries[(i, r)] for r in rs]

    def records(self) -> list[list]:
        return [[i, r, f"{c.numerator}/{c.denominator}"] for (i, r), c in sorted(self.entries.items())]


def p_table(m: ModuleInstance, v: Vec, r_max: int) -> PSeriesTable:
    out = {}
    for i in range(1, m.n + 1):
        for r in range(r_max + 1):
            out[(i, r)] = _scalar(v, apply_P(m, i, r, v))
    return PSeriesTable(m.n, out)


def p_generating_series(m: ModuleInstance, v: Vec, spec: PiSpec, r_max: int | None = None) -> PSeriesTable:
    """P-scalars on v, checked against pi_i(u) pi_{2n+1-i}(-u)."""
    if r_max is None:
        r_max = max([sum(mm for _, _, mm in spec.factors)] + [0]) + 1
    table = p_table(m, v, r_max)
    for i in range(1, m.n + 1):
        want = spec.series(i, r_max + 1)
        got = table.series(i)
        for r, (a, b) in enumerate(zip(got, want)):
            if a != b:
                rep = report("p_series", {"i": i}, False,
                             {"r": r, "got": str(a), "expected": str(b)})
                raise SeriesMismatch(f"P_{{{i},{r}}} acts by {a}, expected {b}", rep)
    return table


def verify_garland_recurrence(m: ModuleInstance, i: int, r_max: int, v: Vec | None = None) -> dict:
    """P_{i,r} v = -(1/r) sum_s h_{i,(s+1)d} P_{i,r-s-1} v for 1 <= r <= r_max."""
    if v is None:
        v = m.cyclic_vector()
    ps = [apply_P(m, i, r, v) for r in range(r_max + 1)]
    for r in range(1, r_max + 1):
        rhs: Vec = {}
        for s in range(r):
            rhs = vadd(rhs, m.apply(cartan_label(i, s + 1), ps[r - s - 1]))
        rhs = vscale(rhs, Fraction(-1, r))
        if rhs != ps[r]:
            rep = report("garland", {"i": i, "r_max": r_max}, False, {"r": r})
            raise RecurrenceFailed(f"recurrence fails for i={i}, r={r}", rep)
    return report("garland", {"i": i, "r_max": r_max, "module": m.name}, True)


def straightening_sides(m: ModuleInstance, root: FiniteRoot, r: int, v: Vec, eq: str,
                        literal: bool = False) -> tuple[Vec, Vec]:
    """Both sides of a straightening identity applied to a highest-weight vector.

    eq "1" (short root) and "3" (long root, steps of 2 delta) compare
    x_{a+d}^{(r)} x_{-a}^{(r+1)} v with (-1)^r sum_s x_{-a+(r-s)d} P_{a,s} v;
    eq "2" (long root) compares x_{(a+d)/2}^{(2r+1)} x_{-a}^{(r+1)} v with
    (-1)^r sum_s 2^(s-r) x_{(-a+(2(r-s)+1)d)/2} P_{a/2,s} v.  With ``literal``
    the sign and the powers of 2 are dropped, as in the plain statement.
    """
    n = m.n
    down = AffineRoot(0, -root)
    if eq in ("1", "3"):
        step = 2 if eq == "1" else 4
        up = AffineRoot(step, root)
        lhs = apply_divided_power(m, up, r, apply_divided_power(m, down, r + 1, v))
        rhs: Vec = {}
        for s in range(r + 1):
            ps = v if s == 0 else p_operator(m, root, s, v)
            rhs = vadd(rhs, m.apply(AffineRoot(step * (r - s), -root), ps))
        sign = 1 if literal else (-1) ** r
        return lhs, vscale(rhs, sign)
    if eq != "2":
        raise ValueError(f"unknown identity {eq}")
    (i,) = root.support()
    eps = 1 if literal else half_sign(n, i)
    up = AffineRoot(1, half_root(n, i))
    lhs = apply_divided_power(m, up, 2 * r + 1, apply_divided_power(m, down, r + 1, v, eps))
    rhs = {}
    for s in range(r + 1):
        if s == 0:
            ps = v
        else:
            ps = p_operator(m, root, s, v, half=True, normalized=False)
            if not literal:
                ps = apply_divided_power(m, AffineRoot(1, half_root(n, i)), 2 * s,
                                         apply_divided_power(m, down, s, v, eps))
                ps = vscale(weight_part(m, ps, m.weights[next(iter(v))]), (-1) ** s)
        c = Fraction(1) if literal else Fraction((-1) ** r, 2 ** (r - s))
        rhs = vadd(rhs, vscale(m.apply(AffineRoot(2 * (r - s) + 1, half_root(n, i, -1)), ps), c))
    return lhs, rhs


def verify_straightening(m: ModuleInstance, root: FiniteRoot, r_max: int, v: Vec | None = None) -> dict:
    """The straightening identities for one positive root, 0 <= r <= r_max.

    The witness also records whether the uncorrected statement happens to
    hold, so the effect of the sign/normalization corrections is visible.
    """
    if v is None:
        v = m.cyclic_vector()
    eqs = ["1"] if root.length_class == SHORT else ["3", "2"]
    literal = {}
    for eq in eqs:
        lit_ok = True
        for r in range(r_max + 1):
            lhs, rhs = straightening_sides(m, root, r, v, eq)
            if lhs != rhs:
                rep = report("straightening", {"eq": eq, "root": str(root), "r": r}, False)
                raise StraighteningFailed(f"identity {eq} fails for {root} at r={r}", rep)
            l2, r2 = straightening_sides(m, root, r, v, eq, literal=True)
            lit_ok = lit_ok and l2 == r2
        literal[eq] = lit_ok
    return report("straightening", {"root": str(root), "r_max": r_max, "module": m.name}, True,
                  {"equations": eqs, "uncorrected_form_holds": literal})


# module construction --------------------------------------------------------

def _factor_modules(n: int, spec: PiSpec) -> list[ModuleInstance]:
    out = []
    for i, z, mult in spec.factors:
        out += [evaluation_module(n, fundamental_rep(n, i), z)] * mult
    return out


def cyclic_closure(m: ModuleInstance, v: Vec, start_grade: int = 1, max_grade: int = 64):
    """Cyclic span under labels of grade <= G, doubling G until the rank is stable.

    Returns (submodule, cutoff used, list of (cutoff, dim)).
    """
    history = []
    G = start_grade
    prev = None
    while True:
        sub = cyclic_span(m, v, labels_up_to(m.n, G))
        history.append((G, sub.dim))
        if sub.dim == m.dim or (prev is not None and prev == sub.dim):
            return sub, G, history
        if G >= max_grade:
            return sub, G, history
        prev = sub.dim
        G *= 2


def build_generic_weyl(n: int, spec: PiSpec) -> ModuleInstance:
    """The tensor of evaluation modules, certified cyclic on the top vector."""
    if not spec.generic:
        raise GenericityViolated("points must be distinct, pairwise z != -z, multiplicity one")
    if not spec.factors:
        return trivial_module(n)
    m = tensor(_factor_modules(n, spec))
    sub, G, hist = cyclic_closure(m, m.cyclic_vector())
    if sub.dim != m.dim:
        raise CyclicityFailed(f"top vector generates {sub.dim} of {m.dim} dimensions ({hist})")
    if m.dim != spec.expected_dim():
        raise CyclicityFailed(f"dimension {m.dim} differs from {spec.expected_dim()}")
    m.cyclic_cutoff = G  # type: ignore[attr-defined]
    # the finite-generation bound max 4 lambda(a^vee) + 1, recorded for comparison
    bound = 4 * max(spec.weight().coeffs) + 1
    m.cutoff_within_bound = G <= bound  # type: ignore[attr-defined]
    m.name = f"W(n={n}, {spec.weight()}, pts={[str(z) for z in spec.points()]})"
    return m


def build_mixed_module(n: int, lambda0: DominantWeight, spec: PiSpec, r_max: int | None = None):
    """ev_0^* V(lambda0) tensored with evaluation factors; returns (module, P-table).

    The P-scalars on the tensor of highest vectors must be the coefficients
    of pi_i(u) pi_{2n+1-i}(-u) of the evaluation factors alone.
    """
    if spec.factors and not spec.generic:
        raise GenericityViolated("points must be distinct, pairwise z != -z, multiplicity one")
    base = ev0_pullback(restricted_irreducible(n, lambda0))
    mods = [base] + _factor_modules(n, spec)
    m = tensor(mods) if len(mods) > 1 else base
    v = m.cyclic_vector()
    lam = lambda0 + spec.weight()
    if r_max is None:
        r_max = max(lam.coeffs, default=0) + 1
    table = p_generating_series(m, v, spec, r_max)
    m.name = f"ev0*V({lambda0}) (x) {len(spec.factors)} factors"
    return m, table


# associated graded ----------------------------------------------------------

def labels_of_grade(n: int, g: int) -> list[AffineRoot]:
    labs = [lab for lab in enumerate_affine_roots(n, "+", g) + enumerate_affine_roots(n, "-", g)
            if lab.grade == g]
    if g % 2 == 0:
        labs += [cartan_label(i, g // 2) for i in range(1, n + 1)]
    return sorted(labs, key=AffineRoot.sort_key)


class _Graded:
    def __init__(self, m: ModuleInstance, stages: list[Subspace], new: list[list]):
        self.m = m
        self.stages = stages  # stages[k] = F_k in echelon form (snapshot)
        self.new = new  # new[k] = pivots of F_k not in F_{k-1}
        self.index = {}
        self.reps = []
        for k, piv in enumerate(new):
            for p in piv:
                self.index[(k, p)] = len(self.reps)
                self.reps.append((k, stages[k].rows[p]))

    def provider(self, label: AffineRoot) -> Mat:
        s = label.grade
        top = len(self.stages) - 1
        out: Mat = {}
        for col, (k, w) in enumerate(self.reps):
            tgt = k + s
            if tgt > top:
                continue
            img = self.m.apply(label, w)
            if not img:
                continue
            if tgt > 0:
                img = self.stages[tgt - 1].reduce(img)
            vec = {self.index[(tgt, p)]: c for p, c in img.items() if (tgt, p) in self.index}
            if vec:
                out[col] = vec
        return out


def associated_graded(m: ModuleInstance, v: Vec | None = None, max_stage: int | None = None) -> ModuleInstance:
    """gr of the filtration F_k = sum_{s <= k} U(CG)[s] v, with its induced action."""
    n = m.n
    if v is None:
        v = m.cyclic_vector()
    if max_stage is None:
        max_stage = 2 * m.dim + 8
    g0 = grade_zero_labels(n)
    space = Subspace()

    def close(frontier: list[Vec]) -> None:
        while frontier:
            nxt = []
            for w in frontier:
                for lab in g0:
                    img = m.apply(lab, w)
                    if img and space.add(img):
                        nxt.append(img)
            frontier = nxt

    first = [v] if space.add(v) else []
    close(first)
    stages = [space.copy()]
    new = [space.pivots()]
    k = 0
    while space.dim < m.dim:
        k += 1
        if k > max_stage:
            raise NotCyclic(f"filtration stalled at dimension {space.dim} of {m.dim}")
        before = set(space.rows)
        added = []
        for s in range(1, k + 1):
            labs = labels_of_grade(n, s)
            for w in stages[k - s].basis():
                for lab in labs:
                    img = m.apply(lab, w)
                    if img and space.add(img):
                        added.append(img)
        close(added)
        stages.append(space.copy())
        new.append(sorted(set(space.rows) - before))
    g = _Graded(m, stages, new)
    weights = [m.weights[p] for piv in new for p in piv]
    grades = [k for k, piv in enumerate(new) for _ in piv]
    out = ModuleInstance(n, len(g.reps), weights, g.provider, grades, 0, name=f"gr {m.name}")
    out.filtration_dims = [st.dim for st in stages]  # type: ignore[attr-defined]
    return out


def verify_demazure_relations(gm: ModuleInstance, lam: DominantWeight, grade_cutoff: int,
                              v: Vec | None = None) -> dict:
    """x_beta^{k_beta + 1} w = 0 for all beta in R_re(-) up to the cutoff; CH_+ w = Cn^+ w = 0."""
    if v is None:
        v = gm.cyclic_vector()
    n = gm.n
    checked, sharp = 0, 0
    for lab in enumerate_affine_roots(n, "+", grade_cutoff):
        if gm.apply(lab, v):
            raise RelationFailed(f"{lab} does not kill w",
                                 report("demazure", {"lambda": list(lam.coeffs)}, False, {"beta": str(lab)}))
        checked += 1
    for r in range(1, grade_cutoff // 2 + 1):
        for i in range(1, n + 1):
            if gm.apply(cartan_label(i, r), v):
                raise RelationFailed(f"h({i},{r}) does not kill w")
            checked += 1
    for lab in enumerate_affine_roots(n, "-", grade_cutoff):
        k = demazure_exponent(lam, lab)
        w = v
        for _ in range(k):
            w = gm.apply(lab, w)
        if w:
            sharp += 1
        if gm.apply(lab, w):
            raise RelationFailed(f"x_{lab}^{k + 1} w != 0",
                                 report("demazure", {"lambda": list(lam.coeffs)}, False,
                                        {"beta": str(lab), "k": k}))
        checked += 1
    return report("demazure", {"n": n, "lambda": list(lam.coeffs), "grade_cutoff": grade_cutoff}, True,
                  {"relations": checked, "sharp_exponents": sharp})


# surjectivity ---------------------------------------------------------------

def verify_surjectivity(n: int, points: Sequence, N: int, grade_cutoff: int | None = None) -> dict:
    """Rank of CG[<= G] in the product of sl_{2n+1} (x) C[t]/(t - z_s)^N, G = 0..cutoff.

    Each grade carries roughly half a copy of sl_{2n+1}, so the default
    cutoff 2kN + 12 leaves room beyond the dimension count.
    """
    pts = [as_rational(z) for z in points]
    if grade_cutoff is None:
        grade_cutoff = 2 * len(pts) * N + 12
    size = 2 * n + 1
    target = len(pts) * N * (size * size - 1)
    if target == 0:
        return report("surjectivity", {"n": n, "points": [], "N": N, "grade_cutoff": grade_cutoff}, True,
                      {"rank": 0, "target": 0, "minimal_cutoff": 0})
    space = Subspace()
    ranks = []
    minimal = None
    from .current_algebra import root_matrix
    for G in range(grade_cutoff + 1):
        for lab in labels_of_grade(n, G):
            mat = root_matrix(n, lab)
            vec = {}
            for s, z in enumerate(pts):
                for (a, b), p in mat.items():
                    for j, c in enumerate(lp_taylor(p, z, N)):
                        if c:
                            vec[(s, j, a, b)] = c
            space.add(vec)
        ranks.append(space.dim)
        if space.dim == target and minimal is None:
            minimal = G
            break
    ok = minimal is not None
    return report("surjectivity", {"n": n, "points": [str(z) for z in pts], "N": N,
                                   "grade_cutoff": grade_cutoff}, ok,
                  {"rank": space.dim, "target": target, "minimal_cutoff": minimal,
                   "rank_by_cutoff": ranks})
