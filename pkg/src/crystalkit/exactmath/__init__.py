"""Exact integer/rational linear algebra and polynomials over Q."""

from crystalkit.exactmath.normal_forms import (
    HermiteResult,
    IntegerSolution,
    SmithResult,
    canonical_forms,
    elementary_divisors,
    hermite_normal_form,
    integer_kernel,
    smith_normal_form,
    solve_integer_linear,
)
from crystalkit.exactmath.polynomials import RatPoly, charpoly, factor_rational_poly

__all__ = [
    "HermiteResult",
    "IntegerSolution",
    "RatPoly",
    "SmithResult",
    "canonical_forms",
    "charpoly",
    "elementary_divisors",
    "factor_rational_poly",
    "hermite_normal_form",
    "integer_kernel",
    "smith_normal_form",
    "solve_integer_linear",
]
