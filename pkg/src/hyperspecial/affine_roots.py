"""Finite roots of C_n (A_1 for n = 1) and the real affine roots of A_{2n}^{(2)}.

Finite parts are stored in doubled epsilon coordinates so that the half
roots (+-e_i) stay integral: a short root e_a +- e_b has two entries of
size 2, a long root 2e_i one entry of size 4, and a half-long root e_i one
entry of size 2.  The delta coefficient is stored doubled as well, and
equals the grade.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

SHORT, LONG, HALF = "short", "long", "half_long"


class ImaginaryRoot(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FiniteRoot:
    coords: tuple[int, ...]
    length_class: str

    def __post_init__(self):
        nz = [c for c in self.coords if c]
        ok = {
            SHORT: len(nz) == 2 and all(abs(c) == 2 for c in nz),
            LONG: len(nz) == 1 and abs(nz[0]) == 4,
            HALF: len(nz) == 1 and abs(nz[0]) == 2,
        }.get(self.length_class, False)
        if not ok:
            raise ValueError(f"coordinates {self.coords} do not form a {self.length_class} root")

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def sign(self) -> int:
        return 1 if next(c for c in self.coords if c) > 0 else -1

    def is_positive(self) -> bool:
        return self.sign > 0

    def __neg__(self) -> "FiniteRoot":
        return FiniteRoot(tuple(-c for c in self.coords), self.length_class)

    def support(self) -> list[int]:
        """1-based epsilon indices with nonzero coefficient."""
        return [k + 1 for k, c in enumerate(self.coords) if c]

    def doubled_weight(self) -> tuple[int, ...]:
        """Doubled epsilon coordinates of the weight this root vector carries."""
        return self.coords

    def dynkin(self) -> tuple[int, ...]:
        """Eigenvalues of h_1..h_n on a root vector of this weight."""
        return dynkin_from_eps([Fraction(c, 2) for c in self.coords])

    def epsilon_str(self) -> str:
        parts = []
        for k, c in enumerate(self.coords, start=1):
            if not c:
                continue
            mag = abs(c) // 2
            coef = "" if mag == 1 else str(mag)
            parts.append(("-" if c < 0 else "+") + coef + f"e{k}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def __str__(self):
        return self.epsilon_str()


def short_root(n: int, a: int, sa: int, b: int, sb: int) -> FiniteRoot:
    c = [0] * n
    c[a - 1] = 2 * sa
    c[b - 1] = 2 * sb
    return FiniteRoot(tuple(c), SHORT)


def long_root(n: int, i: int, s: int = 1) -> FiniteRoot:
    c = [0] * n
    c[i - 1] = 4 * s
    return FiniteRoot(tuple(c), LONG)


def half_root(n: int, i: int, s: int = 1) -> FiniteRoot:
    c = [0] * n
    c[i - 1] = 2 * s
    return FiniteRoot(tuple(c), HALF)


def simple_root(n: int, i: int) -> FiniteRoot:
    """alpha_i = e_i - e_{i+1} for i < n, alpha_n = 2e_n."""
    if not 1 <= i <= n:
        raise ValueError(f"no simple root {i} for n={n}")
    if i == n:
        return long_root(n, n)
    return short_root(n, i, 1, i + 1, -1)


def positive_roots(n: int) -> list[FiniteRoot]:
    """R^+ of C_n in a fixed order: short e_a - e_b, short e_a + e_b, long 2e_i."""
    out = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            out.append(short_root(n, a, 1, b, -1))
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            out.append(short_root(n, a, 1, b, 1))
    for i in range(1, n + 1):
        out.append(long_root(n, i))
    return out


def simple_decomposition(root: FiniteRoot) -> tuple[int, ...]:
    """Coefficients of a (long or short) root in the simple roots."""
    n = root.n
    eps = [Fraction(c, 2) for c in root.coords]
    coeffs = [Fraction(0)] * n
    run = Fraction(0)
    for k in range(n - 1):
        run += eps[k]
        coeffs[k] = run
    coeffs[n - 1] = (run + eps[n - 1]) / 2
    if any(c.denominator != 1 for c in coeffs):
        raise ValueError(f"{root} is not in the root lattice")
    return tuple(int(c) for c in coeffs)


@dataclass(frozen=True, order=True)
class AffineRoot:
    """A real affine root (finite part plus delta) or an imaginary Cartan label.

    ``delta2`` is twice the delta coefficient, which is also the grade.
    Cartan labels h_{i, r delta} have ``finite=None`` and ``cartan_index=i``.
    """

    delta2: int
    finite: FiniteRoot | None = None
    cartan_index: int | None = None

    def __post_init__(self):
        if self.delta2 < 0:
            raise ValueError("negative delta coefficient")
        if self.finite is None:
            if self.cartan_index is None or self.delta2 % 2:
                raise ValueError("Cartan labels need an index and an integer multiple of delta")
            return
        lc = self.finite.length_class
        if lc == SHORT and self.delta2 % 2:
            raise ValueError("short roots take integer multiples of delta")
        if lc == LONG and self.delta2 % 4:
            raise ValueError("long roots take even multiples of delta")
        if lc == HALF and self.delta2 % 2 == 0:
            raise ValueError("half roots take odd multiples of delta/2")

    @property
    def grade(self) -> int:
        return self.delta2

    @property
    def is_cartan(self) -> bool:
        return self.finite is None

    @property
    def sign(self) -> int:
        if self.finite is None:
            return 0
        return self.finite.sign

    @property
    def length_class(self) -> str | None:
        return None if self.finite is None else self.finite.length_class

    @property
    def delta(self) -> Fraction:
        return Fraction(self.delta2, 2)

    def dynkin(self) -> tuple[int, ...]:
        if self.finite is None:
            return ()
        return self.finite.dynkin()

    def sort_key(self):
        """Deterministic order: grade, then Cartans, then finite coordinates."""
        if self.finite is None:
            return (self.delta2, 0, (self.cartan_index,))
        return (self.delta2, 1, tuple(-c for c in self.finite.coords))

    def __str__(self):
        d = self.delta
        ds = str(d)
        if self.finite is None:
            return f"h({self.cartan_index},{ds})"
        return f"x({self.finite.epsilon_str()},{ds})"


def cartan_label(i: int, r: int) -> AffineRoot:
    return AffineRoot(2 * r, None, i)


def enumerate_affine_roots(n: int, sign: str, max_grade: int) -> list[AffineRoot]:
    """Real roots in R_re(+) or R_re(-) of grade at most ``max_grade``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    s = {"+": 1, "-": -1}[sign]
    out: list[AffineRoot] = []
    for pos in positive_roots(n):
        root = pos if s > 0 else -pos
        step = 2 if root.length_class == SHORT else 4
        for g in range(0, max_grade + 1, step):
            out.append(AffineRoot(g, root))
    for i in range(1, n + 1):
        h = half_root(n, i, s)
        for g in range(1, max_grade + 1, 2):
            out.append(AffineRoot(g, h))
    out.sort(key=AffineRoot.sort_key)
    return out


def cartan_labels(n: int, max_grade: int) -> list[AffineRoot]:
    return [cartan_label(i, r) for r in range(max_grade // 2 + 1) for i in range(1, n + 1)]


# weights ------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class DominantWeight:
    """lambda given by its values lambda(alpha_i^vee) on the simple coroots."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if any(c < 0 for c in self.coeffs):
            raise ValueError(f"{self.coeffs} is not dominant")

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, n: int) -> "DominantWeight":
        return cls((0,) * n)

    @classmethod
    def fundamental(cls, n: int, i: int) -> "DominantWeight":
        c = [0] * n
        c[i - 1] = 1
        return cls(tuple(c))

    def __add__(self, other: "DominantWeight") -> "DominantWeight":
        return DominantWeight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def eps(self) -> tuple[int, ...]:
        return eps_from_dynkin(self.coeffs)

    def __str__(self):
        terms = [f"{c}L{i}" if c != 1 else f"L{i}" for i, c in enumerate(self.coeffs, 1) if c]
        return "+".join(terms) if terms else "0"


def eps_from_dynkin(c: Sequence[int]) -> tuple[int, ...]:
    """omega_k = e_1 + ... + e_k, so the k-th coordinate is sum_{j >= k} c_j."""
    out = []
    run = 0
    for x in reversed(c):
        run += x
        out.append(run)
    return tuple(reversed(out))


def dynkin_from_eps(e: Sequence) -> tuple[int, ...]:
    """mu(alpha_i^vee): mu_i - mu_{i+1} for i < n and mu_n for the long coroot."""
    n = len(e)
    out = [e[k] - e[k + 1] for k in range(n - 1)] + [e[n - 1]]
    for x in out:
        if Fraction(x).denominator != 1:
            raise ValueError(f"{tuple(e)} is not an integral weight")
    return tuple(int(x) for x in out)


def pairing(lam: DominantWeight, beta: AffineRoot) -> int:
    """(lambda + Lambda_0, beta^vee) for a real affine root beta.

    With phi the finite part, (phi, phi) its squared length and g the grade
    (twice the delta coefficient) this is (2(lambda, phi) + g) / (phi, phi).
    """
    if beta.finite is None:
        raise ImaginaryRoot(f"{beta} is imaginary")
    e = lam.eps()
    d = beta.finite.coords
    if len(e) != len(d):
        raise ValueError("rank mismatch between weight and root")
    lam_d = sum(a * b for a, b in zip(e, d))  # (lambda, 2 phi)
    dd = sum(b * b for b in d)  # 4 (phi, phi)
    num = 4 * (lam_d + beta.delta2)
    if num % dd:
        raise ValueError(f"non-integral pairing for {beta}")
    return num // dd


def demazure_exponent(lam: DominantWeight, beta: AffineRoot) -> int:
    """k_beta = max(0, -(lambda + Lambda_0, beta^vee))."""
    return max(0, -pairing(lam, beta))
