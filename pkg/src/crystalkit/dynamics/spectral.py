"""Certified root location, entropy of affine maps and the action on rational cohomology.

Roots of each irreducible factor are approximated at high precision and
enclosed in Weierstrass inclusion disks: with approximations z_1..z_d of the
roots of a degree-d polynomial p, every root lies in the union of the disks
|z - z_i| <= d |p(z_i)| / |lc(p) prod_{j != i} (z_i - z_j)|, and a disk
disjoint from the others holds exactly one root.  A disk that meets the unit
circle is resolved exactly: an irreducible non-cyclotomic factor with a root
on the circle is palindromic, and its roots on the circle correspond to the
real roots in (-2, 2) of the trace polynomial g(x + 1/x) = x^{-m} p(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
import sympy

from crystalkit.errors import InternalCheckFailure
from crystalkit.exactmath import matrices as mx
from crystalkit.exactmath.polynomials import RatPoly, charpoly, cyclotomic, factor_rational_poly
from crystalkit.crystal import CrystalGroup
from crystalkit.dynamics.endo import AffineEndo

INSIDE, ON, OUTSIDE = "inside", "on", "outside"
MAX_DPS = 400


@dataclass(frozen=True)
class CertifiedRoot:
    center: complex
    radius: float
    location: str
    modulus_low: float
    modulus_high: float


@dataclass(frozen=True)
class FactorRoots:
    coeffs: tuple            # integer coefficients, lowest degree first
    multiplicity: int
    cyclotomic_index: int | None
    roots: tuple             # CertifiedRoot, empty for cyclotomic factors (all on the circle)

    def moduli_outside(self):
        return [r for r in self.roots if r.location == OUTSIDE]


def _cyclotomic_index(f: RatPoly) -> int | None:
    d = f.degree
    m = f.monic()
    for k in range(1, 2 * d * d + 3):
        c = cyclotomic(k)
        if c.degree == d and c == m:
            return k
    return None


def _trace_polynomial(c: list[int]) -> list[int] | None:
    """g with x^{-m} p(x) = g(x + 1/x) for palindromic p of degree 2m."""
    deg = len(c) - 1
    if deg % 2 or c != c[::-1]:
        return None
    m = deg // 2
    # Dickson-type polynomials D_j(y) = x^j + x^{-j}
    D = [[2], [0, 1]]
    for j in range(2, m + 1):
        prev, prev2 = D[-1], D[-2]
        nxt = [0] + prev
        for i, v in enumerate(prev2):
            nxt[i] -= v
        D.append(nxt)
    g = [0] * (m + 1)
    g[0] += c[m]
    for j in range(1, m + 1):
        for i, v in enumerate(D[j]):
            g[i] += c[m + j] * v
    return g


def _circle_root_count(c: list[int]) -> int:
    g = _trace_polynomial(c)
    if g is None:
        return 0
    y = sympy.Symbol("y")
    P = sympy.Poly(list(reversed(g)), y)
    return 2 * int(P.count_roots(-2, 2))


def _inclusion_disks(c: list[int], dps: int):
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(v) for v in reversed(c)]
        zs = mpmath.polyroots(coeffs, maxsteps=200 + 10 * dps, extraprec=2 * dps)
        d = len(c) - 1
        lc = abs(coeffs[0])
        out = []
        for i, z in enumerate(zs):
            prod = mpmath.mpf(1)
            for j, w in enumerate(zs):
                if j != i:
                    prod *= abs(z - w)
            if prod == 0:
                return None
            r = d * abs(mpmath.polyval(coeffs, z)) / (lc * prod)
            r = r * (1 + mpmath.mpf(10) ** (-8)) + mpmath.mpf(10) ** (-(dps - 10))
            out.append((z, r))
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                if abs(out[i][0] - out[j][0]) <= out[i][1] + out[j][1]:
                    return None
        return out


@lru_cache(maxsize=None)
def _certify_factor(c: tuple) -> tuple:
    c = list(c)
    on_circle = _circle_root_count(c)
    dps = 40
    while dps <= MAX_DPS:
        disks = _inclusion_disks(c, dps)
        if disks is not None:
            with mpmath.workdps(dps):
                located = []
                straddle = 0
                for z, r in disks:
                    m = abs(z)
                    if m - r > 1:
                        loc = OUTSIDE
                    elif m + r < 1:
                        loc = INSIDE
                    else:
                        loc = ON
                        straddle += 1
                    located.append(CertifiedRoot(complex(z), float(r), loc,
                                                 float(max(m - r, 0)), float(m + r)))
            if straddle == on_circle:
                return tuple(located)
        dps *= 2
    raise InternalCheckFailure("root location could not be certified")


@lru_cache(maxsize=None)
def certified_roots(coeffs: tuple) -> tuple:
    """Irreducible factors of an integer polynomial with certified root locations."""
    p = RatPoly(coeffs)
    out = []
    for f, mult in factor_rational_poly(p):
        if f.degree == 0:
            continue
        ints = tuple(f.integer_primitive())
        k = _cyclotomic_index(f)
        roots = () if k is not None else _certify_factor(ints)
        out.append(FactorRoots(ints, mult, k, roots))
    return tuple(out)


def _poly_key(p: RatPoly) -> tuple:
    return tuple(p.integer_primitive())


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Enclosure:
    value: float
    low: float
    high: float


def log_mahler_measure(p: RatPoly) -> Enclosure:
    """Sum of log|lambda| over roots outside the unit circle, with an enclosure."""
    val = lo = hi = mpmath.mpf(0)
    for fr in certified_roots(_poly_key(p)):
        for r in fr.moduli_outside():
            m = abs(mpmath.mpc(r.center))
            val += fr.multiplicity * mpmath.log(m)
            lo += fr.multiplicity * mpmath.log(max(r.modulus_low, 1.0))
            hi += fr.multiplicity * mpmath.log(r.modulus_high)
    return Enclosure(float(val), float(lo), float(hi))


def entropy_affine(e: AffineEndo) -> Enclosure:
    return log_mahler_measure(charpoly(e.matrix()))


def spectral_radius(M) -> Enclosure:
    """Largest root modulus of the characteristic polynomial of M."""
    if not M:
        return Enclosure(0.0, 0.0, 0.0)
    best = Enclosure(0.0, 0.0, 0.0)
    for fr in certified_roots(_poly_key(charpoly(M))):
        if fr.cyclotomic_index is not None:
            cand = Enclosure(1.0, 1.0, 1.0)
            if cand.value > best.value:
                best = cand
            continue
        for r in fr.roots:
            if r.location == ON:
                cand = Enclosure(1.0, 1.0, 1.0)
            else:
                cand = Enclosure(abs(r.center), r.modulus_low, r.modulus_high)
            if cand.value > best.value:
                best = cand
    return best


# ---------------------------------------------------------------------------
# cohomology action
# ---------------------------------------------------------------------------

def invariant_exterior_basis(G: CrystalGroup, k: int) -> list:
    """Rows xi spanning the invariant k-forms: xi C_k(h) = xi for all h."""
    N = len(mx.subsets(G.n, k))
    rows = []
    for h in G.holonomy.generators:
        C = mx.compound([list(r) for r in h], k)
        rows.extend(mx.transpose(mx.sub(C, mx.identity(N))))
    if not rows:
        return mx.to_fractions(mx.identity(N))
    return mx.nullspace(rows, N)


@dataclass
class CohomologyAction:
    bases: dict = field(default_factory=dict)       # degree -> basis rows
    matrices: dict = field(default_factory=dict)    # degree -> matrix of f* in that basis
    radii: dict = field(default_factory=dict)       # degree -> Enclosure
    spectral_radius: Enclosure = Enclosure(1.0, 1.0, 1.0)


def cohomology_action(G: CrystalGroup, e: AffineEndo) -> CohomologyAction:
    F = e.matrix()
    out = CohomologyAction()
    best = None
    for k in range(G.n + 1):
        B = invariant_exterior_basis(G, k)
        out.bases[k] = B
        if not B:
            out.matrices[k] = []
            continue
        CF = mx.compound(F, k)
        BT = mx.transpose(B)
        M = []
        for row in mx.matmul(B, CF):
            coords = mx.solve(BT, row)
            if coords is None:
                raise InternalCheckFailure("invariant forms are not preserved by the endo")
            M.append(coords)
        out.matrices[k] = M
        rad = spectral_radius(M)
        out.radii[k] = rad
        if best is None or rad.value > best.value:
            best = rad
    out.spectral_radius = best
    return out


@dataclass(frozen=True)
class ECReport:
    log_sp: Enclosure
    entropy: Enclosure
    holds: bool
    equality: bool
    note: str = "affine representative satisfies (EC)"


def ec_check(G: CrystalGroup, e: AffineEndo, tolerance: float = 1e-9) -> ECReport:
    sp = cohomology_action(G, e).spectral_radius
    with mpmath.workdps(30):
        lsp = Enclosure(float(mpmath.log(sp.value)), float(mpmath.log(max(sp.low, 1e-300))),
                        float(mpmath.log(sp.high)))
    h = entropy_affine(e)
    holds = lsp.low <= h.high + tolerance
    if not holds:
        raise InternalCheckFailure("log sp exceeds the entropy of an affine map")
    equality = abs(lsp.value - h.value) <= tolerance
    note = "affine representative satisfies (EC)"
    return ECReport(lsp, h, holds, equality, note)
