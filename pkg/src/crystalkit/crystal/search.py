"""Torsion-free cohomology classes and minimal-dimension searches."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

from crystalkit.errors import CapExceeded, NotFound
from crystalkit.exactmath import matrices as mx
from crystalkit.groups import FiniteMatrixGroup, close_group
from crystalkit.crystal.cohomology import all_classes, system_from_coordinates
from crystalkit.crystal.group import CrystalGroup, crystal_from_system
from crystalkit.crystal.invariants import is_torsion_free, restriction_criterion, torsion_element


@dataclass
class ClassSurvey:
    """Every class of H^2(H, Z^n), split by torsion-freeness."""

    torsion_free: list[tuple]                  # (coords, CrystalGroup)
    with_torsion: list[tuple]                  # (coords, witness GroupElement)


def survey_classes(H: FiniteMatrixGroup, class_cap: int = 4096) -> ClassSurvey:
    tf, tor = [], []
    for coords in all_classes(H, class_cap=class_cap):
        G = crystal_from_system(H, system_from_coordinates(H, coords), name=f"class{list(coords)}")
        w = torsion_element(G)
        if w is None:
            tf.append((coords, G))
        else:
            tor.append((coords, w))
    return ClassSurvey(tf, tor)


def torsion_free_classes(H: FiniteMatrixGroup | Sequence, class_cap: int = 4096) -> list[CrystalGroup]:
    """Bieberbach groups realizing each class whose prime-order restrictions are all nonzero."""
    if not isinstance(H, FiniteMatrixGroup):
        H = close_group(H)
    out = []
    for coords, G in survey_classes(H, class_cap).torsion_free:
        if not restriction_criterion(G):
            raise ArithmeticError("torsion criteria disagree")
        G.metadata["class"] = list(coords)
        out.append(G)
    return out


# ---------------------------------------------------------------------------
# minimal dimension
# ---------------------------------------------------------------------------

@dataclass
class LatticeCatalog:
    """Integral lattices of one abstract group, as images of a fixed generator list."""

    group_name: str
    group_order: int
    lattices: list                  # each: list of generator images (square integer matrices)
    names: list[str] = field(default_factory=list)
    complete: bool = False

    def degree(self, k: int) -> int:
        return len(self.lattices[k][0])


@dataclass
class SearchResult:
    dimension: int
    exact: bool
    summands: list[str]
    witness: CrystalGroup
    candidates_examined: int

    @property
    def label(self) -> str:
        return "exact" if self.exact else "upper bound"


def _direct_sum(catalog: LatticeCatalog, combo) -> list:
    k = len(catalog.lattices[0])
    return [mx.block_diag(*[catalog.lattices[c][i] for c in combo]) for i in range(k)]


def minimal_dimension_search(catalog: LatticeCatalog, n_max: int, constraint: str = "none",
                             class_cap: int = 4096, seed: int = 0) -> SearchResult:
    """Least n for which a faithful sum of catalog lattices carries a torsion-free class."""
    if constraint not in ("none", "q_mult_free"):
        raise ValueError("constraint must be 'none' or 'q_mult_free'")
    from crystalkit.repanalysis import YES, integral_rep, mult_free_check

    names = catalog.names or [f"L{k}" for k in range(len(catalog.lattices))]
    examined = 0
    for n in range(1, n_max + 1):
        for size in range(1, n + 1):
            for combo in combinations_with_replacement(range(len(catalog.lattices)), size):
                if sum(catalog.degree(c) for c in combo) != n:
                    continue
                gens = _direct_sum(catalog, combo)
                try:
                    H = close_group(gens, degree=n, order_cap=catalog.group_order)
                except CapExceeded:
                    continue
                if H.order != catalog.group_order:
                    continue
                examined += 1
                if constraint == "q_mult_free" and mult_free_check(integral_rep(gens, degree=n), seed=seed) != YES:
                    continue
                found = torsion_free_classes(H, class_cap)
                if found:
                    witness = found[0]
                    witness.name = "+".join(names[c] for c in combo)
                    return SearchResult(n, catalog.complete, [names[c] for c in combo], witness, examined)
    raise NotFound(f"no torsion-free class up to dimension {n_max}")
