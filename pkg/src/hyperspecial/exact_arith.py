"""Exact rational and Laurent-polynomial arithmetic.

Rationals are plain :class:`fractions.Fraction` values.  A
:class:`LaurentPoly` is an immutable map from integer exponents of ``t``
to nonzero rationals.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class EvalAtZero(ZeroDivisionError):
    """Evaluation at t = 0 of a polynomial with negative exponents."""


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as "num/den" (den always present)."""
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?\*?(t)?(?:\^(-?\d+))?")


class LaurentPoly:
    """Immutable Laurent polynomial in t with rational coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = as_rational(v)
                if v:
                    c[int(k)] = v
        self._c = c
        self._hash = None

    # constructors
    @classmethod
    def const(cls, a: Scalar) -> "LaurentPoly":
        return cls({0: a})

    @classmethod
    def monomial(cls, k: int, a: Scalar = 1) -> "LaurentPoly":
        return cls({k: a})

    @classmethod
    def parse(cls, s: str) -> "LaurentPoly":
        """Parse strings such as ``"3/2*t^-1 + t^2 - 1"``."""
        s = s.replace(" ", "")
        if s in ("", "0"):
            return cls()
        terms = re.split(r"(?<!\^)(?=[+-])", s)
        out: dict[int, Fraction] = {}
        for term in terms:
            if not term:
                continue
            m = _TERM.fullmatch(term)
            if m is None:
                raise ValueError(f"cannot parse Laurent term {term!r}")
            sign, coef, var, exp = m.groups()
            c = Fraction(coef) if coef else Fraction(1)
            if not var:
                if not coef:
                    raise ValueError(f"cannot parse Laurent term {term!r}")
                k = 0
            else:
                k = int(exp) if exp else 1
            if sign == "-":
                c = -c
            out[k] = out.get(k, Fraction(0)) + c
        return cls(out)

    # data access
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    # arithmetic
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return lp_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return lp_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({k: v * other for k, v in self._c.items()})
        other = _lift(other)
        if other is NotImplemented:
            return other
        return lp_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials are invertible")
            (k, v), = self._c.items()
            return LaurentPoly({k * e: v ** e})
        out = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return False
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __call__(self, z: Scalar) -> Fraction:
        return lp_eval(self, z)

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items()):
            mag = abs(v)
            coef = "" if (mag == 1 and k != 0) else str(mag)
            if k == 0:
                mono = ""
            elif k == 1:
                mono = "t"
            else:
                mono = f"t^{k}"
            body = coef + ("*" if coef and mono else "") + mono
            parts.append(("-" if v < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def _lift(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    c = dict(a._c)
    for k, v in b._c.items():
        s = c.get(k, 0) + v
        if s:
            c[k] = s
        else:
            c.pop(k, None)
    return LaurentPoly(c)


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    c: dict[int, Fraction] = {}
    for i, x in a._c.items():
        for j, y in b._c.items():
            c[i + j] = c.get(i + j, 0) + x * y
    return LaurentPoly(c)


def lp_negate_variable(a: LaurentPoly) -> LaurentPoly:
    """Substitute t -> -t."""
    return LaurentPoly({k: (-v if k % 2 else v) for k, v in a._c.items()})


def lp_eval(a: LaurentPoly, z: Scalar) -> Fraction:
    z = as_rational(z)
    if z == 0:
        if any(k < 0 for k in a._c):
            raise EvalAtZero("negative power of t evaluated at 0")
        return a[0]
    return sum((v * z ** k for k, v in a._c.items()), Fraction(0))


def lp_taylor(a: LaurentPoly, z: Scalar, order: int) -> list[Fraction]:
    """Coefficients of a(t) in powers of (t - z), up to (t - z)^(order-1)."""
    z = as_rational(z)
    if z == 0:
        raise EvalAtZero("Taylor expansion at 0")
    out = [Fraction(0)] * order
    for k, v in a._c.items():
        # d^j/dt^j t^k / j! = binom(k, j) t^(k-j), valid for negative k too
        b = Fraction(1)
        for j in range(order):
            out[j] += v * b * z ** (k - j)
            b = b * (k - j) / (j + 1)
    return out


def poly_from_roots(roots: Iterable[tuple[Fraction, int]]) -> list[Fraction]:
    """Coefficient list of prod (1 - a u)^m for (a, m) pairs, lowest degree first."""
    out = [Fraction(1)]
    for a, m in roots:
        for _ in range(m):
            nxt = out + [Fraction(0)]
            for i, c in enumerate(out):
                nxt[i + 1] -= a * c
            out = nxt
    return out
