"""Affine self-maps x -> F x + d of a flat manifold."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from crystalkit.errors import CapExceeded, InternalCheckFailure, NoCompatibleTheta, VectorObstruction
from crystalkit.exactmath import matrices as mx
from crystalkit.exactmath.normal_forms import smith_normal_form
from crystalkit.groups import FiniteMatrixGroup
from crystalkit.crystal import CrystalGroup

ENDOMORPHISM_CAP = 200_000


@dataclass(frozen=True)
class AffineEndo:
    F: tuple                 # integer matrix, frozen
    d: tuple                 # rational translation
    theta: tuple             # theta[i] = index of theta(h_i)
    d_adjusted: bool = False

    @property
    def n(self) -> int:
        return len(self.F)

    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.F]


# ---------------------------------------------------------------------------
# holonomy endomorphisms
# ---------------------------------------------------------------------------

def _extend(H: FiniteMatrixGroup, images: list[int]) -> list[int] | None:
    """Extend generator images to a homomorphism H -> H, or None if inconsistent."""
    gens = H.generator_indices
    theta: list = [None] * H.order
    theta[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, img in zip(gens, images):
            y = H.mul(g, x)
            v = H.mul(img, theta[x])
            if theta[y] is None:
                theta[y] = v
                queue.append(y)
            elif theta[y] != v:
                return None
    return theta


def holonomy_endomorphisms(H: FiniteMatrixGroup, candidates=None, cap: int = ENDOMORPHISM_CAP) -> list[list[int]]:
    """All endomorphisms of H, optionally restricting each generator's image."""
    gens = H.generator_indices
    pools = candidates if candidates is not None else [range(H.order)] * len(gens)
    total = 1
    for p in pools:
        total *= max(len(p), 1)
    if total > cap:
        raise CapExceeded("holonomy endomorphism candidates", cap)
    out = []
    for images in product(*pools):
        t = _extend(H, list(images))
        if t is not None:
            out.append(t)
    return out


def compatible_thetas(G: CrystalGroup, F) -> list[list[int]]:
    """Endomorphisms theta with F h = theta(h) F for every h."""
    H = G.holonomy
    F = mx.to_ints(F)
    if mx.det(F) != 0:
        Fi = mx.inverse(F)
        theta = []
        for h in H.elements:
            img = mx.matmul(mx.matmul(F, h), Fi)
            j = H.index.get(mx.freeze(img)) if mx.is_integral(img) else None
            if j is None:
                return []
            theta.append(j)
        return [theta]
    FH = {}
    for j, hj in enumerate(H.elements):
        FH.setdefault(mx.freeze(mx.matmul(hj, F)), []).append(j)
    pools = []
    for g in H.generator_indices:
        pools.append(FH.get(mx.freeze(mx.matmul(F, H.elements[g])), []))
    if any(not p for p in pools):
        return []
    return holonomy_endomorphisms(H, pools)


# ---------------------------------------------------------------------------
# translation condition
# ---------------------------------------------------------------------------

def translation_defect(G: CrystalGroup, F, theta, d, i: int) -> tuple:
    """F a(h) + (I - theta(h)) d - a(theta(h)); integral iff the condition holds at h."""
    H = G.holonomy
    j = theta[i]
    Fa = mx.matvec(F, G.vectors[i])
    Md = mx.matvec(mx.sub(mx.identity(G.n), H.elements[j]), d)
    return tuple(Fraction(a) + b - c for a, b, c in zip(Fa, Md, G.vectors[j]))


def _integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def solve_translation(G: CrystalGroup, F, theta) -> list[Fraction] | None:
    """A rational d satisfying the condition at every generator, or None."""
    H = G.holonomy
    n = G.n
    rows, rhs = [], []
    for g in H.generator_indices:
        j = theta[g]
        rows.extend(mx.sub(mx.identity(n), H.elements[j]))
        Fa = mx.matvec(F, G.vectors[g])
        rhs.extend(Fraction(c) - a for a, c in zip(Fa, G.vectors[j]))
    if not rows:
        return [Fraction(0)] * n
    # (I - theta h) d = c + z: Smith form U M V = D, d = V y, D y = U c + z'
    S = smith_normal_form(rows)
    Uc = mx.matvec(S.U, rhs)
    diag = S.diagonal
    y = [Fraction(0)] * n
    for i, val in enumerate(Uc):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if Fraction(val).denominator != 1:
                return None
        elif i < n:
            y[i] = Fraction(val) / di
    return [Fraction(x) for x in mx.matvec(S.V, y)]


def _offending_element(G: CrystalGroup, F, theta) -> int:
    H = G.holonomy
    n = G.n
    for i in range(1, H.order):
        j = theta[i]
        M = mx.sub(mx.identity(n), H.elements[j])
        Fa = mx.matvec(F, G.vectors[i])
        c = [Fraction(cc) - a for a, cc in zip(Fa, G.vectors[j])]
        S = smith_normal_form(M)
        Uc = mx.matvec(S.U, c)
        diag = S.diagonal
        for k, val in enumerate(Uc):
            dk = diag[k] if k < len(diag) else 0
            if dk == 0 and Fraction(val).denominator != 1:
                return i
    return H.generator_indices[0] if H.generator_indices else 0


def validate_endo(G: CrystalGroup, F, d=None) -> AffineEndo:
    """Check that x -> F x + d descends to the flat manifold, adjusting d if needed."""
    n = G.n
    F = mx.to_ints(F)
    if len(F) != n or any(len(r) != n for r in F):
        raise ValueError("linear part has the wrong shape")
    d = [Fraction(x) for x in (d if d is not None else [0] * n)]
    thetas = compatible_thetas(G, F)
    if not thetas:
        raise NoCompatibleTheta("no endomorphism theta of H with F h = theta(h) F")
    for theta in thetas:
        if all(_integral(translation_defect(G, F, theta, d, i)) for i in range(G.order)):
            return AffineEndo(mx.freeze(F), tuple(d), tuple(theta))
    for theta in thetas:
        d2 = solve_translation(G, F, theta)
        if d2 is None:
            continue
        if not all(_integral(translation_defect(G, F, theta, d2, i)) for i in range(G.order)):
            raise InternalCheckFailure("adjusted translation fails on a non-generator")
        return AffineEndo(mx.freeze(F), tuple(d2), tuple(theta), d_adjusted=True)
    bad = _offending_element(G, F, thetas[0])
    raise VectorObstruction(f"translation condition fails modulo Z^n at holonomy element {bad} for every d",
                            element=bad)


def check_endo(G: CrystalGroup, e: AffineEndo) -> None:
    """Re-verify every stated invariant of an endo."""
    H = G.holonomy
    F = e.matrix()
    for i, h in enumerate(H.elements):
        if mx.matmul(F, h) != mx.to_ints(mx.matmul(H.elements[e.theta[i]], F)):
            raise InternalCheckFailure("F h != theta(h) F")
        if not _integral(translation_defect(G, F, e.theta, e.d, i)):
            raise InternalCheckFailure("translation condition fails")
    for i in range(H.order):
        for j in range(H.order):
            if e.theta[H.mul(i, j)] != H.mul(e.theta[i], e.theta[j]):
                raise InternalCheckFailure("theta is not multiplicative")
