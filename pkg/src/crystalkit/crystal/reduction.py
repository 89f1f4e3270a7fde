"""Subgroups of Gamma preserving an affine hyperplane, and the Calabi reduction.

For an integral primitive covector lam with lam h = eps(h) lam, Gamma acts
on R through (h, t) -> (x -> eps(h) x + lam(t)).  The stabilizer of the
point c is {(h, t) : lam(t) = (1 - eps(h)) c}; it preserves the hyperplane
lam = c and acts there as a crystallographic group of dimension n - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from crystalkit.errors import InvalidInput, NoCenter, NotFaithful
from crystalkit.exactmath import matrices as mx
from crystalkit.exactmath.normal_forms import (
    integer_kernel,
    lattice_basis,
    rational_lattice_basis,
    solve_integer_linear,
)
from crystalkit.crystal.group import CrystalGroup, GroupElement, build_crystal
from crystalkit.crystal.invariants import fixed_lattice, is_torsion_free


def rational_gcd(values) -> Fraction:
    """Positive generator of the subgroup of Q generated by ``values``."""
    vals = [Fraction(v) for v in values if v != 0]
    if not vals:
        return Fraction(0)
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    g = 0
    for v in vals:
        g = gcd(g, int(v * den))
    return Fraction(g, den)


def primitive_covector(row) -> list[int]:
    row = [Fraction(x) for x in row]
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero covector")
    return [x // g for x in ints]


def covector_signs(G: CrystalGroup, lam) -> list[int] | None:
    """eps(h) with lam h = eps(h) lam for every element, or None."""
    out = []
    for h in G.holonomy.elements:
        lh = mx.vecmat(lam, h)
        if lh == list(lam):
            out.append(1)
        elif lh == [-x for x in lam]:
            out.append(-1)
        else:
            return None
    return out


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


@dataclass
class HyperplaneSubgroup:
    """The stabilizer subgroup and its realization in dimension n - 1."""

    ambient: CrystalGroup
    covector: list[int]
    signs: list[int]
    level: Fraction
    targets: dict                  # holonomy index -> required value of lam(t)
    kernel_basis: list             # basis of ker(lam) in Z^n (rows)
    origin: tuple
    realized: CrystalGroup
    coordinates: list = field(default_factory=list)   # columns: lattice basis of the realization in R^n

    def contains(self, g: GroupElement) -> bool:
        if not self.ambient.element_of(g):
            return False
        i = self.ambient.holonomy.index[mx.freeze(g.h)]
        return i in self.targets and _dot(self.covector, g.t) == self.targets[i]

    @property
    def holonomy_indices(self) -> list[int]:
        return sorted(self.targets)


def hyperplane_subgroup(G: CrystalGroup, lam, level=0, allowed=None, name: str = "") -> HyperplaneSubgroup:
    """Realize {(h, t) in Gamma : h in allowed, lam(t) = (1 - eps(h)) level}."""
    n = G.n
    if n < 2:
        raise InvalidInput("hyperplane subgroups need dimension at least 2")
    lam = primitive_covector(lam)
    eps = covector_signs(G, lam)
    if eps is None:
        raise InvalidInput("covector is not an eigenvector of every holonomy element")
    level = Fraction(level)
    H = G.holonomy
    allowed = range(G.order) if allowed is None else allowed
    w = solve_integer_linear([lam], [1]).particular
    p = tuple(level * x for x in w)
    K = lattice_basis(integer_kernel([lam], n), n)
    B = mx.transpose(K)

    targets = {}
    lifts = {}
    for h in allowed:
        target = (1 - eps[h]) * level
        m = target - _dot(lam, G.vectors[h])
        if m.denominator != 1:
            continue
        targets[h] = target
        lifts[h] = tuple(a + int(m) * b for a, b in zip(G.vectors[h], w))

    def coords(v):
        y = mx.solve(B, list(v))
        if y is None:
            raise ArithmeticError("vector not in the hyperplane direction")
        return y

    lin = {}
    trans = {}
    for h in targets:
        M = H.elements[h]
        Mh = mx.transpose([coords(mx.matvec(M, col)) for col in K])
        if not mx.is_integral(Mh):
            raise ArithmeticError("holonomy does not preserve the kernel lattice")
        lin[h] = mx.to_ints(Mh)
        shift = [a + b - c for a, b, c in zip(mx.matvec(M, p), lifts[h], p)]
        trans[h] = coords(shift)

    # elements acting on the hyperplane as pure translations enlarge the lattice
    ident = mx.identity(n - 1)
    extra = [trans[h] for h in targets if h != 0 and lin[h] == ident]
    for u in extra:
        if all(Fraction(x).denominator == 1 for x in u):
            raise NotFaithful("a nontrivial element fixes the hyperplane pointwise")
    C = mx.transpose(rational_lattice_basis(mx.to_fractions(ident) + extra, n - 1)) if extra else \
        mx.to_fractions(ident)
    Ci = mx.inverse(C)

    mats, vecs, seen = [], [], set()
    for h in sorted(targets):
        M2 = mx.matmul(mx.matmul(Ci, lin[h]), C)
        if not mx.is_integral(M2):
            raise ArithmeticError("enlarged lattice is not holonomy stable")
        key = mx.freeze(mx.to_ints(M2))
        if key in seen or mx.is_identity(key):
            continue
        seen.add(key)
        mats.append(mx.to_ints(M2))
        vecs.append(mx.matvec(Ci, trans[h]))
    realized = build_crystal(n - 1, mats, vecs, name=name)
    return HyperplaneSubgroup(G, lam, eps, level, targets, K, p, realized,
                              mx.matmul(B, C))


# ---------------------------------------------------------------------------
# Calabi reduction
# ---------------------------------------------------------------------------

@dataclass
class CalabiResult:
    reduced: CrystalGroup
    covector: list[int]            # Gamma -> Q, (h, t) -> lam(t)
    image_generator: Fraction      # lam(Gamma) = image_generator * Z
    fixed_vector: list[int]
    subgroup: HyperplaneSubgroup

    def to_z(self, g: GroupElement) -> int:
        """The epimorphism Gamma -> Z."""
        v = _dot(self.covector, g.t) / self.image_generator
        return int(v)


def calabi_reduce(G: CrystalGroup) -> CalabiResult:
    """Gamma as an extension of a group of dimension n - 1 by Z."""
    F = fixed_lattice(G)
    if not F:
        raise NoCenter("first Betti number is zero")
    Fb = lattice_basis(F, G.n)
    v = Fb[0]
    N = G.order
    P = mx.zeros(G.n, G.n)
    for h in G.holonomy.elements:
        P = mx.add(P, h)
    P = mx.scale(Fraction(1, N), P)
    FbT = mx.transpose(Fb)
    lam0 = []
    for j in range(G.n):
        col = [P[i][j] for i in range(G.n)]
        lam0.append(mx.solve(FbT, col)[0])
    lam = primitive_covector(lam0)
    if covector_signs(G, lam) != [1] * G.order:
        raise ArithmeticError("Calabi covector is not invariant")
    sub = hyperplane_subgroup(G, lam, 0, name=(G.name + "'") if G.name else "")
    tau = rational_gcd([1] + [_dot(lam, a) for a in G.vectors])
    if is_torsion_free(G) and not is_torsion_free(sub.realized):
        raise ArithmeticError("reduction of a Bieberbach group acquired torsion")
    return CalabiResult(sub.realized, lam, tau, v, sub)
