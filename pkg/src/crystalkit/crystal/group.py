"""Crystallographic groups as extensions of a finite holonomy group by Z^n."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from crystalkit.errors import InconsistentVectorSystem, NotFaithful
from crystalkit.exactmath import matrices as mx
from crystalkit.groups import FiniteMatrixGroup, close_group
from crystalkit.groups.matgroup import DEFAULT_ORDER_CAP

Vec = tuple  # tuple of Fractions


def _vec(v) -> Vec:
    return tuple(Fraction(x) for x in v)


def _mod1(v) -> Vec:
    return tuple(mx.frac_mod1(Fraction(x)) for x in v)


def _apply(h, v) -> Vec:
    # integer matrix times rational vector, over a common denominator
    den = 1
    for x in v:
        d = x.denominator if isinstance(x, Fraction) else 1
        if d != 1:
            den = den * d // gcd(den, d)
    nums = [int(x * den) for x in v]
    if all(isinstance(a, int) for row in h for a in row):
        return tuple(Fraction(sum(a * b for a, b in zip(row, nums)), den) for row in h)
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in h)


@dataclass(frozen=True)
class GroupElement:
    """Affine map x -> h x + t with h integral and t rational."""

    h: tuple
    t: Vec

    @classmethod
    def of(cls, h, t) -> "GroupElement":
        return cls(mx.freeze(h), _vec(t))

    @classmethod
    def translation(cls, t) -> "GroupElement":
        return cls.of(mx.identity(len(t)), t)

    @property
    def n(self) -> int:
        return len(self.t)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        h = mx.freeze(mx.matmul(self.h, other.h))
        t = tuple(a + b for a, b in zip(self.t, _apply(self.h, other.t)))
        return GroupElement(h, t)

    def inverse(self) -> "GroupElement":
        hi = mx.to_ints(mx.inverse(self.h))
        return GroupElement(mx.freeze(hi), tuple(-x for x in _apply(hi, self.t)))

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        out = GroupElement.of(mx.identity(self.n), [0] * self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return mx.is_identity(self.h) and all(x == 0 for x in self.t)

    def is_translation(self) -> bool:
        return mx.is_identity(self.h)

    def apply(self, x) -> Vec:
        return tuple(a + b for a, b in zip(_apply(self.h, x), self.t))


@dataclass
class CrystalGroup:
    """Gamma given by its holonomy group and a vector system on all of H.

    ``vectors[i]`` is a(h_i) reduced into [0, 1)^n, for element index i of
    ``holonomy``.  Element 0 is the identity with a(1) = 0.
    """

    n: int
    holonomy: FiniteMatrixGroup
    vectors: list
    name: str = ""
    metadata: dict = field(default_factory=dict)
    generator_vectors: list = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.holonomy.order

    def matrix(self, i: int) -> tuple:
        return self.holonomy.elements[i]

    def vector(self, i: int) -> Vec:
        return self.vectors[i]

    def lift(self, i: int) -> GroupElement:
        return GroupElement(self.holonomy.elements[i], self.vectors[i])

    def generators(self) -> list[GroupElement]:
        """Lifts of the holonomy generators followed by the lattice basis."""
        H = self.holonomy
        out = [GroupElement(g, self.generator_vectors[k] if self.generator_vectors else self.vectors[H.index[g]])
               for k, g in enumerate(H.generators)]
        for j in range(self.n):
            out.append(GroupElement.translation([int(i == j) for i in range(self.n)]))
        return out

    def cocycle(self, i: int, j: int) -> list[int]:
        """f(g, h) = a(g) + g a(h) - a(gh), an integer vector."""
        k = self.holonomy.mul(i, j)
        v = [a + b - c for a, b, c in zip(self.vectors[i], _apply(self.matrix(i), self.vectors[j]), self.vectors[k])]
        if any(x.denominator != 1 for x in v):
            raise InconsistentVectorSystem(f"cocycle not integral at ({i}, {j})")
        return [int(x) for x in v]

    def check_cocycle(self) -> None:
        for i in range(self.order):
            for j in range(self.order):
                self.cocycle(i, j)

    def element_of(self, g: GroupElement) -> bool:
        """Membership test for an affine map."""
        i = self.holonomy.index.get(mx.freeze(g.h))
        if i is None:
            return False
        return all((a - b).denominator == 1 for a, b in zip(g.t, self.vectors[i]))

    def is_orientable(self) -> bool:
        return all(mx.det([list(r) for r in h]) == 1 for h in self.holonomy.generators)

    def __repr__(self) -> str:
        return f"CrystalGroup({self.name or 'unnamed'}, n={self.n}, |H|={self.order})"


def build_crystal(n: int, matrices: Sequence, vectors: Sequence, name: str = "", metadata=None,
                  order_cap: int = DEFAULT_ORDER_CAP) -> CrystalGroup:
    """Extend generator translations over all of H and verify the cocycle identity."""
    if len(matrices) != len(vectors):
        raise ValueError("one vector per generator is required")
    gens_v = [_vec(v) for v in vectors]
    for M, v in zip(matrices, gens_v):
        if len(M) != n or len(v) != n:
            raise ValueError("generator dimension mismatch")
        if mx.is_identity(M) and any(x.denominator != 1 for x in v):
            raise NotFaithful("a pure translation generator lies outside Z^n")
    H = close_group(matrices, order_cap=order_cap, degree=n)
    gidx = [H.index[mx.freeze(M)] for M in matrices]
    vec: list = [None] * H.order
    vec[0] = tuple(Fraction(0) for _ in range(n))
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for k, g in enumerate(gidx):
            y = H.mul(g, x)
            cand = _mod1(a + b for a, b in zip(gens_v[k], _apply(H.elements[g], vec[x])))
            if vec[y] is None:
                vec[y] = cand
                queue.append(y)
            elif vec[y] != cand:
                raise InconsistentVectorSystem(
                    f"translation of element {y} is forced to both {vec[y]} and {cand} modulo Z^n")
    G = CrystalGroup(n, H, vec, name, dict(metadata or {}), gens_v)
    G.check_cocycle()
    return G


def crystal_from_system(H: FiniteMatrixGroup, vectors: Sequence, name: str = "") -> CrystalGroup:
    """CrystalGroup from a vector system given on every element of H."""
    vec = [_mod1(v) for v in vectors]
    if any(x != 0 for x in vec[0]):
        raise InconsistentVectorSystem("a(1) must vanish modulo Z^n")
    G = CrystalGroup(H.degree, H, vec, name)
    G.check_cocycle()
    return G


def conjugate_crystal(G: CrystalGroup, U, s=None, name: str = "") -> CrystalGroup:
    """Image of Gamma under conjugation by the affine map x -> U x + s."""
    n = G.n
    s = _vec(s if s is not None else [0] * n)
    Ui = mx.int_inverse(U)
    mats, vecs = [], []
    for g in G.generators()[:len(G.holonomy.generators)]:
        h2 = mx.matmul(mx.matmul(U, g.h), Ui)
        t2 = [a + b - c for a, b, c in zip(_apply(U, g.t), s, _apply(h2, s))]
        mats.append(h2)
        vecs.append(t2)
    return build_crystal(n, mats, vecs, name=name or G.name)
