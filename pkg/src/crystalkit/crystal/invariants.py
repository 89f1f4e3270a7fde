"""Torsion, Betti number, center, orientability and abelianization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from crystalkit.errors import NoSolution
from crystalkit.exactmath import matrices as mx
from crystalkit.exactmath.normal_forms import elementary_divisors, integer_kernel, solve_integer_linear
from crystalkit.groups import prime_order_elements
from crystalkit.crystal.cohomology import restriction
from crystalkit.crystal.group import CrystalGroup, GroupElement


# ---------------------------------------------------------------------------
# torsion
# ---------------------------------------------------------------------------

def _norm_matrix(G: CrystalGroup, i: int) -> list:
    H = G.holonomy
    n = G.n
    N = mx.zeros(n, n)
    x = 0
    for _ in range(H.element_order(i)):
        N = mx.add(N, H.elements[x])
        x = H.mul(x, i)
    return N


def torsion_witness(G: CrystalGroup, i: int) -> GroupElement | None:
    """An element (h_i, a(h_i) + z) of finite order, if one exists."""
    N = _norm_matrix(G, i)
    Na = mx.matvec(N, G.vectors[i])
    if any(Fraction(x).denominator != 1 for x in Na):
        raise ArithmeticError("p-th power of a lift is not a lattice translation")
    try:
        sol = solve_integer_linear(N, [-int(x) for x in Na])
    except NoSolution:
        return None
    return GroupElement(G.matrix(i), tuple(a + z for a, z in zip(G.vectors[i], sol.particular)))


def torsion_element(G: CrystalGroup) -> GroupElement | None:
    for i in prime_order_elements(G.holonomy):
        w = torsion_witness(G, i)
        if w is not None:
            return w
    return None


def is_torsion_free(G: CrystalGroup) -> bool:
    """No prime-order holonomy element has a lift of finite order."""
    return torsion_element(G) is None


def restriction_criterion(G: CrystalGroup) -> bool:
    """Torsion-freeness via restrictions of the class to prime-order subgroups."""
    for i in prime_order_elements(G.holonomy):
        _, coords = restriction(G.holonomy, G.vectors, [i])
        if not any(coords):
            return False
    return True


# ---------------------------------------------------------------------------
# numerical invariants
# ---------------------------------------------------------------------------

def _stacked_fixed_equations(G: CrystalGroup) -> list:
    rows = []
    for h in G.holonomy.generators:
        rows.extend(mx.sub(h, mx.identity(G.n)))
    return rows


def fixed_space(G: CrystalGroup) -> list:
    rows = _stacked_fixed_equations(G)
    return mx.nullspace(rows, G.n) if rows else mx.to_fractions(mx.identity(G.n))


def fixed_lattice(G: CrystalGroup) -> list:
    rows = _stacked_fixed_equations(G)
    return integer_kernel(rows, G.n) if rows else mx.identity(G.n)


def betti1(G: CrystalGroup) -> int:
    return len(fixed_space(G))


@dataclass(frozen=True)
class InvariantsReport:
    betti1: int
    center_rank: int
    orientable: bool
    holonomy_order: int
    torsion_free: bool


def invariants_report(G: CrystalGroup) -> InvariantsReport:
    return InvariantsReport(betti1(G), len(fixed_lattice(G)), G.is_orientable(), G.order, is_torsion_free(G))


# ---------------------------------------------------------------------------
# abelianization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Abelianization:
    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = ["Z"] * (1 if self.free_rank else 0)
        if self.free_rank > 1:
            parts = [f"Z^{self.free_rank}"]
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def relation_matrix(G: CrystalGroup) -> list:
    """Additive relations on generators t_1..t_n, s_h (h in H)."""
    n, N = G.n, G.order
    H = G.holonomy
    rows = []
    for h in range(N):
        M = H.elements[h]
        for j in range(n):
            # s_h t_j s_h^{-1} = h(t_j), abelianized: (h - I) e_j = 0
            rows.append([M[i][j] - int(i == j) for i in range(n)] + [0] * N)
    for g in range(N):
        for h in range(N):
            gh = H.mul(g, h)
            # s_g s_h = t^{f(g,h)} s_gh
            f = G.cocycle(g, h)
            row = [-x for x in f] + [0] * N
            row[n + g] += 1
            row[n + h] += 1
            row[n + gh] -= 1
            rows.append(row)
    return rows


def abelianization(G: CrystalGroup) -> Abelianization:
    R = relation_matrix(G)
    divs = elementary_divisors(R)
    cols = G.n + G.order
    return Abelianization(cols - len(divs), tuple(d for d in divs if d > 1))


def fingerprint(G: CrystalGroup) -> tuple:
    """(n, |H|, orientable, b1, abelianization) used to tell catalog groups apart."""
    ab = abelianization(G)
    return (G.n, G.order, G.is_orientable(), betti1(G), ab.free_rank, ab.torsion)
