"""Exact computations for hyperspecial current algebras of type A_2n^(2) and their local Weyl modules."""

from .affine_roots import AffineRoot, DominantWeight, FiniteRoot
from .exact_arith import LaurentPoly, Rational

__version__ = "0.1.0"

__all__ = ["AffineRoot", "DominantWeight", "FiniteRoot", "LaurentPoly", "Rational", "__version__"]
