"""Finite matrix groups over Z and their exact character tables."""

from crystalkit.groups.characters import CharacterTable, character_table
from crystalkit.groups.cyclotomic import Cyclotomic
from crystalkit.groups.matgroup import (
    FiniteMatrixGroup,
    class_of,
    close_group,
    conjugacy_classes,
    prime_order_elements,
)

__all__ = [
    "CharacterTable",
    "Cyclotomic",
    "FiniteMatrixGroup",
    "character_table",
    "class_of",
    "close_group",
    "conjugacy_classes",
    "prime_order_elements",
]
