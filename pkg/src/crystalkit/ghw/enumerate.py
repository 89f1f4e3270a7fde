"""Bieberbach groups of dimension n with diagonal holonomy (Z_2)^{n-1}.

Holonomy elements are diagonal sign matrices, encoded as bitmasks s with
bit i set when the i-th diagonal entry is -1.  A subgroup of order 2^{n-1}
is the kernel H_w = {s : popcount(s & w) even} of a nonzero mask w.

Every class in H^2(H_w, Z^n) has a representative with a(s)_i in {0, 1/2}
given by a linear functional f_i : H_w -> F_2, and f_i only matters on
K_i = {s : s_i = +1}.  The lift of s has finite order exactly when every
coordinate fixed by s has f_i(s) = 0, so the group is torsion-free iff the
sets {s in K_i : f_i(s) = 1} cover H_w minus the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from crystalkit.errors import CapExceeded, InternalCheckFailure, InvalidInput
from crystalkit.crystal import CrystalGroup, build_crystal, is_torsion_free

MAX_DIMENSION = 7
DEFAULT_NODE_CAP = 50_000_000


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


def diagonal_holonomy(n: int, w: int) -> list[int]:
    return [s for s in range(1 << n) if not _parity(s & w)]


def diagonal_matrix(n: int, s: int) -> list[list[int]]:
    return [[(-1 if (s >> i) & 1 else 1) if i == j else 0 for j in range(n)] for i in range(n)]


def _basis(elements: list[int]) -> list[int]:
    basis, span = [], {0}
    for s in elements:
        if s not in span:
            basis.append(s)
            span |= {x ^ s for x in span}
    return basis


@dataclass(frozen=True)
class DiagonalSystem:
    """A vector system a(s)_i = parity(funcs[i] & s) / 2 on H_w."""

    n: int
    w: int
    funcs: tuple

    def vector(self, s: int) -> list[Fraction]:
        return [Fraction(_parity(u & s), 2) for u in self.funcs]

    def covered(self, s: int) -> bool:
        return any(not (s >> i) & 1 and _parity(u & s) for i, u in enumerate(self.funcs))

    def to_crystal(self, name: str = "") -> CrystalGroup:
        gens = _basis(diagonal_holonomy(self.n, self.w))
        return build_crystal(self.n, [diagonal_matrix(self.n, s) for s in gens],
                             [self.vector(s) for s in gens], name=name,
                             metadata={"w": self.w, "funcs": list(self.funcs),
                                       "equivalence": "signed-permutation"})


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

class _Search:
    def __init__(self, n: int, w: int, node_cap: int):
        self.n, self.w, self.node_cap = n, w, node_cap
        self.H = diagonal_holonomy(n, w)
        self.index = {s: k for k, s in enumerate(self.H)}
        self.nodes = 0
        # candidate functionals per coordinate, deduplicated by support on K_i
        self.cands = []
        for i in range(n):
            seen = {}
            for u in range(1 << n):
                sup = 0
                for k, s in enumerate(self.H):
                    if not (s >> i) & 1 and _parity(u & s):
                        sup |= 1 << k
                seen.setdefault(sup, u)
            self.cands.append(sorted((sup, u) for sup, u in seen.items()))
        self.cap = max(bin(sup).count("1") for c in self.cands for sup, _ in c)
        self.reach = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            self.reach[i] = self.reach[i + 1]
            for sup, _ in self.cands[i]:
                self.reach[i] |= sup
        self.target = ((1 << len(self.H)) - 1) & ~1
        self.perms = [p for p in permutations(range(n)) if self._permute_mask(p, w) == w]
        self.bit_tables = [[self._permute_mask(p, m) for m in range(1 << n)] for p in self.perms]
        self.elem_tables = [[self.index[t[s]] for s in self.H] for t in self.bit_tables]

    @staticmethod
    def _permute_mask(p, m: int) -> int:
        out = 0
        for i, j in enumerate(p):
            if (m >> i) & 1:
                out |= 1 << j
        return out

    def key(self, supports) -> tuple:
        """Class invariant: for each s the set of fixed coordinates i with f_i(s) = 1."""
        out = [0] * len(self.H)
        for i, sup in enumerate(supports):
            bit = 1 << i
            k = 0
            while sup:
                if sup & 1:
                    out[k] |= bit
                sup >>= 1
                k += 1
        return tuple(out)

    def orbit(self, key: tuple) -> set:
        images = set()
        m = len(key)
        for bits, elems in zip(self.bit_tables, self.elem_tables):
            img = [0] * m
            for k in range(m):
                img[elems[k]] = bits[key[k]]
            images.add(tuple(img))
        return images

    def first_choices(self) -> list:
        """Representatives of coordinate-0 functionals under permutations fixing 0."""
        stab = [k for k, p in enumerate(self.perms) if p[0] == 0]
        reps, seen = [], set()
        for sup, u in self.cands[0]:
            if sup in seen:
                continue
            reps.append((sup, u))
            for k in stab:
                el = self.elem_tables[k]
                img = 0
                for b in range(len(self.H)):
                    if (sup >> b) & 1:
                        img |= 1 << el[b]
                seen.add(img)
        return reps

    def run(self):
        n = self.n
        funcs = [0] * n
        sups = [0] * n

        def rec(i, cov):
            self.nodes += 1
            if self.nodes > self.node_cap:
                raise CapExceeded("GHW search nodes", self.node_cap)
            rest = self.target & ~cov
            if i == n:
                if not rest:
                    yield tuple(funcs), tuple(sups)
                return
            if rest & ~self.reach[i] or bin(rest).count("1") > (n - i) * self.cap:
                return
            for sup, u in (self.first_choices() if i == 0 else self.cands[i]):
                funcs[i], sups[i] = u, sup
                yield from rec(i + 1, cov | sup)
            funcs[i] = sups[i] = 0

        yield from rec(0, 0)


def enumerate_systems(n: int, w: int, node_cap: int = DEFAULT_NODE_CAP) -> list[DiagonalSystem]:
    """Torsion-free systems on H_w, one per signed-permutation class."""
    if n < 1:
        raise InvalidInput("dimension must be positive")
    S = _Search(n, w, node_cap)
    visited: set = set()
    found = []
    for funcs, sups in S.run():
        k = S.key(sups)
        if k in visited:
            continue
        orb = S.orbit(k)
        visited |= orb
        found.append((min(orb), DiagonalSystem(n, w, funcs)))
    found.sort(key=lambda x: x[0])
    return [d for _, d in found]


def ghw_enumerate(n: int, orientable: bool, node_cap: int = DEFAULT_NODE_CAP) -> list[CrystalGroup]:
    """GHW groups with diagonal holonomy, up to signed-permutation equivalence."""
    if n > MAX_DIMENSION:
        raise CapExceeded("GHW dimension", MAX_DIMENSION)
    if n < 1:
        raise InvalidInput("dimension must be positive")
    full = (1 << n) - 1
    if orientable:
        weights = [full]
    else:
        # -I lies in H_w when popcount(w) is even, forcing torsion
        weights = [(1 << k) - 1 for k in range(1, n) if k % 2]
    out = []
    tag = "o" if orientable else "n"
    for w in weights:
        for d in enumerate_systems(n, w, node_cap):
            G = d.to_crystal(name=f"ghw{n}{tag}{len(out) + 1}")
            if not is_torsion_free(G):
                raise InternalCheckFailure("covering test and torsion solver disagree")
            if G.is_orientable() != orientable:
                raise InternalCheckFailure("orientability does not match the holonomy choice")
            out.append(G)
    return out


# ---------------------------------------------------------------------------
# classification helpers
# ---------------------------------------------------------------------------

def is_ghw(G: CrystalGroup) -> bool:
    """Torsion-free with elementary abelian holonomy of order 2^{n-1}."""
    if G.order != 2 ** (G.n - 1):
        return False
    H = G.holonomy
    if any(H.element_order(i) > 2 for i in range(G.order)):
        return False
    return is_torsion_free(G)


def _exterior_invariant_dims(G: CrystalGroup) -> list[int]:
    """dim (Lambda^k Q^n)^H for k = 0..n, as averages of traces."""
    from crystalkit.exactmath.polynomials import charpoly
    n = G.n
    sums = [Fraction(0)] * (n + 1)
    for h in G.holonomy.elements:
        p = charpoly([list(r) for r in h])
        # tr Lambda^k h = (-1)^k * coefficient of x^{n-k}
        for k in range(n + 1):
            sums[k] += (-1) ** k * p.coeffs[n - k]
    dims = [s / G.order for s in sums]
    if any(d.denominator != 1 for d in dims):
        raise InternalCheckFailure("non-integral invariant dimension")
    return [int(d) for d in dims]


def is_rational_homology_sphere(G: CrystalGroup) -> bool:
    dims = _exterior_invariant_dims(G)
    return all(d == 0 for d in dims[1:G.n])
