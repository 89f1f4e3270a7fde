"""Exhaustive scans of affine self-maps with bounded linear part."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from crystalkit.errors import CapExceeded, NoCompatibleTheta, VectorObstruction
from crystalkit.exactmath import matrices as mx
from crystalkit.crystal import CrystalGroup
from crystalkit.dynamics.endo import AffineEndo, holonomy_endomorphisms, validate_endo
from crystalkit.dynamics.fixed import FixedPointReport, fixed_point_data

SCAN_CAP = 5_000_000


@dataclass
class ScanResult:
    bound: int
    candidates: int                      # matrices in the box satisfying some intertwining relation
    valid: list = field(default_factory=list)             # (AffineEndo, FixedPointReport)
    counterexamples: list = field(default_factory=list)   # (AffineEndo, FixedPointReport) with N != |L|
    obstructed: int = 0
    degenerate: int = 0

    @property
    def summary(self) -> dict:
        return {"bound": self.bound, "candidates": self.candidates, "valid": len(self.valid),
                "obstructed": self.obstructed, "degenerate": self.degenerate,
                "counterexamples": len(self.counterexamples)}


def _intertwiner_equations(G: CrystalGroup, theta) -> list:
    """Rows of F h - theta(h) F = 0 on the entries of F (row-major)."""
    n = G.n
    H = G.holonomy
    rows = []
    for g in H.generator_indices:
        h = H.elements[g]
        t = H.elements[theta[g]]
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] += h[k][j]
                    row[k * n + j] -= t[i][k]
                rows.append(row)
    return rows


def _box_points(rows, n2: int, bound: int, cap: int):
    """Integer points of {v : rows v = 0} with all entries in [-bound, bound]."""
    if rows:
        R, pivots = mx.rref(rows)
        R = R[:len(pivots)]
    else:
        R, pivots = [], []
    free = [c for c in range(n2) if c not in pivots]
    if (2 * bound + 1) ** len(free) > cap:
        raise CapExceeded("scan candidates", cap)
    for vals in product(range(-bound, bound + 1), repeat=len(free)):
        v = [0] * n2
        for c, x in zip(free, vals):
            v[c] = x
        ok = True
        for r, p in zip(R, pivots):
            s = -sum((r[c] * v[c] for c in free if r[c]), Fraction(0))
            if s.denominator != 1 or abs(s) > bound:
                ok = False
                break
            v[p] = int(s)
        if ok:
            yield tuple(v)


def candidate_matrices(G: CrystalGroup, bound: int, cap: int = SCAN_CAP) -> list[tuple]:
    """All F with entries in [-bound, bound] intertwining some endomorphism of H, sorted."""
    n = G.n
    seen = set()
    for theta in holonomy_endomorphisms(G.holonomy):
        for v in _box_points(_intertwiner_equations(G, theta), n * n, bound, cap):
            seen.add(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)))
    return sorted(seen)


def anosov_scan(G: CrystalGroup, bound: int = 2, cap: int = SCAN_CAP) -> ScanResult:
    cands = candidate_matrices(G, bound, cap)
    res = ScanResult(bound, len(cands))
    for F in cands:
        try:
            e = validate_endo(G, F)
        except (VectorObstruction, NoCompatibleTheta):
            res.obstructed += 1
            continue
        rep = fixed_point_data(G, e)
        res.valid.append((e, rep))
        if rep.degenerate:
            res.degenerate += 1
        if not rep.anosov:
            res.counterexamples.append((e, rep))
    return res
