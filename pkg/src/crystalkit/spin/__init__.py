"""Clifford algebras and spin structures on orientable flat manifolds."""

from crystalkit.spin.clifford import CliffordElement, InvariantForm, clifford_lift, invariant_form
from crystalkit.spin.structures import Relation, SpinLift, SpinStructures, presentation, spin_structures

__all__ = [
    "CliffordElement",
    "InvariantForm",
    "Relation",
    "SpinLift",
    "SpinStructures",
    "clifford_lift",
    "invariant_form",
    "presentation",
    "spin_structures",
]
