"""Crystallographic and Bieberbach groups."""

from crystalkit.crystal.cohomology import CohomologyResult, class_coordinates, cohomology, restriction
from crystalkit.crystal.group import (
    CrystalGroup,
    GroupElement,
    build_crystal,
    conjugate_crystal,
    crystal_from_system,
)
from crystalkit.crystal.invariants import (
    Abelianization,
    InvariantsReport,
    abelianization,
    betti1,
    fingerprint,
    invariants_report,
    is_torsion_free,
    restriction_criterion,
    torsion_element,
)
from crystalkit.crystal.reduction import CalabiResult, calabi_reduce, hyperplane_subgroup
from crystalkit.crystal.search import (
    LatticeCatalog,
    SearchResult,
    minimal_dimension_search,
    survey_classes,
    torsion_free_classes,
)

__all__ = [
    "Abelianization",
    "CalabiResult",
    "CohomologyResult",
    "CrystalGroup",
    "GroupElement",
    "InvariantsReport",
    "LatticeCatalog",
    "SearchResult",
    "abelianization",
    "betti1",
    "build_crystal",
    "calabi_reduce",
    "class_coordinates",
    "cohomology",
    "conjugate_crystal",
    "crystal_from_system",
    "fingerprint",
    "hyperplane_subgroup",
    "invariants_report",
    "is_torsion_free",
    "minimal_dimension_search",
    "restriction",
    "restriction_criterion",
    "survey_classes",
    "torsion_element",
    "torsion_free_classes",
]
