"""Representation-theoretic predicates for holonomy representations."""

from crystalkit.repanalysis.algebra import (
    DEFINITE_QUATERNION,
    IMAGINARY_QUADRATIC,
    INFINITE_UNITS,
    RATIONAL_FIELD,
    BlockReport,
    CommutantAlgebra,
    IntegralRep,
    block_decomposition,
    commutant,
    conjugate_rep,
    integral_rep,
)
from crystalkit.repanalysis.predicates import (
    FINITE,
    INDETERMINATE,
    INFINITE,
    NO,
    YES,
    MultiplicityVector,
    OutFiniteResult,
    calabi_yau_check,
    complex_multiplicities,
    kahler_out_finite,
    mult_free_check,
    out_finite,
)

__all__ = [
    "BlockReport",
    "CommutantAlgebra",
    "DEFINITE_QUATERNION",
    "FINITE",
    "IMAGINARY_QUADRATIC",
    "INDETERMINATE",
    "INFINITE",
    "INFINITE_UNITS",
    "IntegralRep",
    "MultiplicityVector",
    "NO",
    "OutFiniteResult",
    "RATIONAL_FIELD",
    "YES",
    "block_decomposition",
    "calabi_yau_check",
    "commutant",
    "complex_multiplicities",
    "conjugate_rep",
    "integral_rep",
    "kahler_out_finite",
    "mult_free_check",
    "out_finite",
]
