"""Generalized Hantzsche-Wendt groups, Fibonacci presentations and dihedral splittings."""

from crystalkit.ghw.dihedral import (
    AmalgamSplit,
    DInfElement,
    DihedralEpi,
    FactorLabel,
    amalgam_split,
    dihedral_quotients,
    make_epi,
)
from crystalkit.ghw.enumerate import (
    DiagonalSystem,
    diagonal_holonomy,
    enumerate_systems,
    ghw_enumerate,
    is_ghw,
    is_rational_homology_sphere,
)
from crystalkit.ghw.fibonacci import (
    EPI,
    HOMOMORPHISM_ONLY,
    NOT_HOMOMORPHISM,
    EpiReport,
    Presentation,
    check_epimorphism,
    fibonacci_epimorphism_search,
    fibonacci_presentation,
    free_reduce,
)

__all__ = [
    "AmalgamSplit",
    "DInfElement",
    "DiagonalSystem",
    "DihedralEpi",
    "EPI",
    "EpiReport",
    "FactorLabel",
    "HOMOMORPHISM_ONLY",
    "NOT_HOMOMORPHISM",
    "Presentation",
    "amalgam_split",
    "check_epimorphism",
    "diagonal_holonomy",
    "dihedral_quotients",
    "enumerate_systems",
    "fibonacci_epimorphism_search",
    "fibonacci_presentation",
    "free_reduce",
    "ghw_enumerate",
    "is_ghw",
    "is_rational_homology_sphere",
    "make_epi",
]
