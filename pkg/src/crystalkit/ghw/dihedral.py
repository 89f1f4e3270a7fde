"""Epimorphisms onto the infinite dihedral group and the induced amalgam splittings.

An integral primitive covector lam with lam h = eps(h) lam lets Gamma act on
the line by x -> eps(h) x + lam(t).  With at least one eps(h) = -1 the image
is generated by a translation tau and a reflection; in the coordinate
y = (x - c) / tau, with c the center of a reflection, it is the standard
D_inf = <y -> -y, y -> y + 1>.  Elements are written t^k or x t^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from crystalkit.errors import InternalCheckFailure, InvalidEpi
from crystalkit.exactmath import matrices as mx
from crystalkit.exactmath.normal_forms import integer_kernel, lattice_basis
from crystalkit.crystal import CrystalGroup, GroupElement, is_torsion_free
from crystalkit.crystal.reduction import (
    HyperplaneSubgroup,
    covector_signs,
    hyperplane_subgroup,
    primitive_covector,
    rational_gcd,
)
from crystalkit.ghw.enumerate import is_ghw


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class DInfElement:
    """y -> sign * y + shift with integer shift."""

    sign: int
    shift: int

    def __mul__(self, other: "DInfElement") -> "DInfElement":
        return DInfElement(self.sign * other.sign, self.sign * other.shift + self.shift)

    def word(self) -> str:
        # x = (y -> -y), t = (y -> y + 1), so x t^k = (y -> -y - k)
        return f"t^{self.shift}" if self.sign == 1 else f"x t^{-self.shift}"

    def is_identity(self) -> bool:
        return self.sign == 1 and self.shift == 0


@dataclass
class DihedralEpi:
    group: CrystalGroup
    covector: list[int]
    signs: list[int]
    tau: Fraction           # generator of the translation image in x-coordinates
    center: Fraction        # a reflection center in x-coordinates
    images: list = field(default_factory=list)   # words for group.generators()
    family_complete: bool = True

    def image(self, g: GroupElement) -> DInfElement:
        i = self.group.holonomy.index[mx.freeze(g.h)]
        e = self.signs[i]
        m = (_dot(self.covector, g.t) + (e - 1) * self.center) / self.tau
        if m.denominator != 1:
            raise InternalCheckFailure("image shift is not integral")
        return DInfElement(e, int(m))

    def verify(self) -> None:
        """Homomorphism on all products of generator lifts, and onto D_inf."""
        G = self.group
        gens = G.generators()
        for a in gens:
            for b in gens:
                if self.image(a * b) != self.image(a) * self.image(b):
                    raise InternalCheckFailure("dihedral map is not multiplicative")
        for i in range(G.order):
            for j in range(G.order):
                a, b = G.lift(i), G.lift(j)
                if self.image(a * b) != self.image(a) * self.image(b):
                    raise InternalCheckFailure("dihedral map is not multiplicative on lifts")
        imgs = [self.image(g) for g in gens]
        if not any(x.sign == -1 for x in imgs):
            raise InternalCheckFailure("image contains no reflection")
        shifts = {x.shift for x in imgs if x.sign == 1}
        refl = {x.shift for x in imgs if x.sign == -1}
        from math import gcd
        g = 0
        for s in shifts:
            g = gcd(g, s)
        r0 = min(refl)
        for s in refl:
            g = gcd(g, s - r0)
        if g != 1:
            raise InternalCheckFailure("image is a proper subgroup of D_inf")


def _sign_vectors(G: CrystalGroup):
    H = G.holonomy
    k = len(H.generators)
    for signs in product((1, -1), repeat=k):
        if all(s == 1 for s in signs):
            continue
        rows = []
        for h, s in zip(H.generators, signs):
            hT = mx.transpose([list(r) for r in h])
            rows.extend(mx.sub(hT, mx.scale(s, mx.identity(G.n))))
        lat = integer_kernel(rows, G.n)
        if lat:
            yield signs, lattice_basis(lat, G.n)


def make_epi(G: CrystalGroup, lam, family_complete: bool = True) -> DihedralEpi:
    lam = primitive_covector(lam)
    eps = covector_signs(G, lam)
    if eps is None or all(e == 1 for e in eps):
        raise InvalidEpi("covector gives no reflection")
    tau = rational_gcd([1] + [_dot(lam, G.vectors[i]) for i in range(G.order) if eps[i] == 1])
    h0 = next(i for i in range(G.order) if eps[i] == -1)
    center = _dot(lam, G.vectors[h0]) / 2
    epi = DihedralEpi(G, lam, eps, tau, center, family_complete=family_complete)
    epi.images = [epi.image(g).word() for g in G.generators()]
    epi.verify()
    return epi


def dihedral_quotients(G: CrystalGroup) -> list[DihedralEpi]:
    """Epimorphisms onto D_inf through rank-one H-stable quotients of the lattice."""
    out = []
    for _, basis in _sign_vectors(G):
        complete = len(basis) == 1
        for lam in basis:
            out.append(make_epi(G, lam, family_complete=complete))
    return out


# ---------------------------------------------------------------------------
# amalgam splitting
# ---------------------------------------------------------------------------

@dataclass
class FactorLabel:
    dimension: int
    holonomy_order: int
    ghw: bool
    orientable: bool


@dataclass
class AmalgamSplit:
    gamma1: CrystalGroup
    gamma2: CrystalGroup
    x: CrystalGroup
    labels: tuple               # (label gamma1, label gamma2, label X)
    subgroups: tuple            # HyperplaneSubgroup for gamma1, gamma2, X

    @property
    def both_ghw(self) -> bool:
        return self.labels[0].ghw and self.labels[1].ghw


def _label(G: CrystalGroup) -> FactorLabel:
    return FactorLabel(G.n, G.order, is_ghw(G), G.is_orientable())


def amalgam_split(G: CrystalGroup, epi: DihedralEpi | None = None) -> AmalgamSplit:
    """Gamma as Gamma_1 *_X Gamma_2 from the two reflection stabilizers of an epimorphism."""
    if epi is None:
        quotients = dihedral_quotients(G) if G.n >= 2 else []
        if not quotients:
            raise InvalidEpi("the group has no epimorphism onto D_inf")
        epi = quotients[0]
    if covector_signs(G, epi.covector) != epi.signs or epi.group.holonomy.elements != G.holonomy.elements:
        raise InvalidEpi("epimorphism belongs to a different group")
    kernel_h = [i for i in range(G.order) if epi.signs[i] == 1]
    X = hyperplane_subgroup(G, epi.covector, 0, allowed=kernel_h, name=f"{G.name}:X")
    c1, c2 = epi.center, epi.center + epi.tau / 2
    S1 = hyperplane_subgroup(G, epi.covector, c1, name=f"{G.name}:G1")
    S2 = hyperplane_subgroup(G, epi.covector, c2, name=f"{G.name}:G2")
    _check_split(G, epi, X, S1, S2)
    groups = (S1.realized, S2.realized, X.realized)
    return AmalgamSplit(*groups, labels=tuple(_label(g) for g in groups), subgroups=(S1, S2, X))


def _check_split(G, epi, X: HyperplaneSubgroup, S1: HyperplaneSubgroup, S2: HyperplaneSubgroup) -> None:
    # X is the kernel; each Gamma_i adds exactly one coset of reflections
    for S in (S1, S2):
        refl = [h for h in S.targets if epi.signs[h] == -1]
        if not refl:
            raise InternalCheckFailure("a factor contains no reflection, index is not 2")
        if {h: v for h, v in S.targets.items() if epi.signs[h] == 1} != X.targets:
            raise InternalCheckFailure("a factor does not contain the kernel with index 2")
    common = {h: v for h, v in S1.targets.items() if S2.targets.get(h) == v}
    if common != X.targets:
        raise InternalCheckFailure("Gamma_1 and Gamma_2 do not intersect in X")
    if is_torsion_free(G):
        for S in (S1, S2, X):
            if not is_torsion_free(S.realized):
                raise InternalCheckFailure("a subgroup of a Bieberbach group has torsion")
