"""Lefschetz and Nielsen numbers of affine maps by averaging over the holonomy."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from crystalkit.errors import InternalCheckFailure
from crystalkit.exactmath import matrices as mx
from crystalkit.crystal import CrystalGroup
from crystalkit.dynamics.endo import AffineEndo


@dataclass(frozen=True)
class FixedPointReport:
    lefschetz: int
    nielsen: int
    anosov: bool
    terms: tuple            # det(I - h F) for each holonomy element, in holonomy order
    degenerate: bool        # some term vanishes


def fixed_point_data(G: CrystalGroup, e: AffineEndo) -> FixedPointReport:
    F = e.matrix()
    n = G.n
    I = mx.identity(n)
    terms = tuple(int(mx.det(mx.sub(I, mx.matmul(h, F)))) for h in G.holonomy.elements)
    L = Fraction(sum(terms), G.order)
    N = Fraction(sum(abs(t) for t in terms), G.order)
    if L.denominator != 1 or N.denominator != 1:
        raise InternalCheckFailure("averaged fixed-point number is not an integer")
    L, N = int(L), int(N)
    if N < abs(L):
        raise InternalCheckFailure("Nielsen number below |Lefschetz number|")
    return FixedPointReport(L, N, N == abs(L), terms, any(t == 0 for t in terms))


def torus_lift_fixed_points(G: CrystalGroup, e: AffineEndo, i: int) -> int | None:
    """Fixed points in [0,1)^n of x -> h_i (F x + d) + a(h_i) mod Z^n, by direct enumeration.

    Returns None when I - h_i F is singular (fixed points not isolated).
    """
    h = G.holonomy.elements[i]
    F = e.matrix()
    n = G.n
    M = mx.sub(mx.identity(n), mx.matmul(h, F))
    if mx.det(M) == 0:
        return None
    Mi = mx.inverse(M)
    b = [Fraction(x) + y for x, y in zip(mx.matvec(h, e.d), G.vectors[i])]
    # x in [0,1)^n forces z = M x - b into a box
    ranges = []
    for r in range(n):
        lo = sum(min(0, v) for v in M[r]) - b[r]
        hi = sum(max(0, v) for v in M[r]) - b[r]
        ranges.append(range(int(lo) - 1, int(hi) + 2))
    found = set()
    for z in product(*ranges):
        x = mx.matvec(Mi, [bb + zz for bb, zz in zip(b, z)])
        if all(0 <= v < 1 for v in x):
            found.add(tuple(x))
    return len(found)


def brute_force_fixed_points(G: CrystalGroup, e: AffineEndo) -> tuple[list, int | None]:
    """Per-lift fixed-point counts on the covering torus and the resulting count on the manifold."""
    counts = [torus_lift_fixed_points(G, e, i) for i in range(G.order)]
    if any(c is None for c in counts):
        return counts, None
    total = Fraction(sum(counts), G.order)
    if total.denominator != 1:
        raise InternalCheckFailure("lift fixed points do not descend evenly")
    return counts, int(total)
