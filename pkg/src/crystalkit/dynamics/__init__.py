"""Affine self-maps of flat manifolds: fixed points, entropy and cohomology."""

from crystalkit.dynamics.endo import (
    AffineEndo,
    check_endo,
    compatible_thetas,
    holonomy_endomorphisms,
    validate_endo,
)
from crystalkit.dynamics.fixed import (
    FixedPointReport,
    brute_force_fixed_points,
    fixed_point_data,
    torus_lift_fixed_points,
)
from crystalkit.dynamics.scan import ScanResult, anosov_scan, candidate_matrices
from crystalkit.dynamics.spectral import (
    CohomologyAction,
    ECReport,
    Enclosure,
    certified_roots,
    cohomology_action,
    ec_check,
    entropy_affine,
    log_mahler_measure,
    spectral_radius,
)

__all__ = [
    "AffineEndo",
    "CohomologyAction",
    "ECReport",
    "Enclosure",
    "FixedPointReport",
    "ScanResult",
    "anosov_scan",
    "brute_force_fixed_points",
    "candidate_matrices",
    "certified_roots",
    "check_endo",
    "cohomology_action",
    "compatible_thetas",
    "ec_check",
    "entropy_affine",
    "fixed_point_data",
    "holonomy_endomorphisms",
    "log_mahler_measure",
    "spectral_radius",
    "torus_lift_fixed_points",
    "validate_endo",
]
