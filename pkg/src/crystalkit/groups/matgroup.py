"""Finite subgroups of GL(n, Z) given by generators."""

from __future__ import annotations

from collections import deque
from math import gcd
from typing import Sequence

from crystalkit.errors import CapExceeded, NotInvertible
from crystalkit.exactmath import matrices as mx

DEFAULT_ORDER_CAP = 512


def _mul(A, B):
    Bt = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


class FiniteMatrixGroup:
    """A finite matrix group materialized by breadth-first closure.

    Elements are frozen (tuple-of-tuple) integer matrices.  Element 0 is
    the identity.  Products are looked up through a lazily filled table of
    indices, keyed by the canonical tuple encoding of the matrix.
    """

    def __init__(self, degree: int, generators: Sequence, elements: Sequence, labels=None):
        self.degree = degree
        self.generators = [mx.freeze(g) for g in generators]
        self.elements = [mx.freeze(e) for e in elements]
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.labels = list(labels) if labels is not None else [f"g{i + 1}" for i in range(len(generators))]
        self._table: dict[tuple[int, int], int] = {}
        self._inverse: list[int] | None = None
        self._orders: list[int] | None = None
        self._classes = None

    # basic structure ----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteMatrixGroup(degree={self.degree}, order={self.order})"

    @property
    def generator_indices(self) -> list[int]:
        return [self.index[g] for g in self.generators]

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._table.get(key)
        if r is None:
            r = self.index[_mul(self.elements[i], self.elements[j])]
            self._table[key] = r
        return r

    def inverse(self, i: int) -> int:
        if self._inverse is None:
            inv = [0] * self.order
            for a in range(1, self.order):
                # the last power before reaching the identity is a^{-1}
                k, prev = a, 0
                while k != 0:
                    prev = k
                    k = self.mul(k, a)
                inv[a] = prev
            self._inverse = inv
        return self._inverse[i]

    def element_order(self, i: int) -> int:
        if self._orders is None:
            orders = []
            for a in range(self.order):
                k, o = a, 1
                while k != 0:
                    k = self.mul(k, a)
                    o += 1
                orders.append(o)
            self._orders = orders
        return self._orders[i]

    def power(self, i: int, k: int) -> int:
        k %= self.element_order(i)
        r = 0
        for _ in range(k):
            r = self.mul(r, i)
        return r

    @property
    def exponent(self) -> int:
        e = 1
        for i in range(self.order):
            o = self.element_order(i)
            e = e * o // gcd(e, o)
        return e

    def is_abelian(self) -> bool:
        gens = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def matrix(self, i: int):
        return self.elements[i]

    def subgroup_generated(self, indices: Sequence[int]) -> list[int]:
        """Sorted element indices of the subgroup generated by ``indices``."""
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in indices:
                y = self.mul(g, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)


def close_group(gens: Sequence, order_cap: int = DEFAULT_ORDER_CAP, degree: int | None = None,
                labels=None) -> FiniteMatrixGroup:
    """Breadth-first closure of integer matrices with determinant +-1.

    Raises :class:`NotInvertible` for a generator with |det| != 1 and
    :class:`CapExceeded` when more than ``order_cap`` elements appear.
    """
    gens = [mx.freeze(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generator list")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree or any(len(r) != degree for r in g):
            raise ValueError("generators must be square of equal degree")
        if abs(mx.det([list(r) for r in g])) != 1:
            raise NotInvertible(f"generator has determinant {mx.det([list(r) for r in g])}")
    ident = mx.freeze(mx.identity(degree))
    elements = [ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _mul(g, x)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > order_cap:
                    raise CapExceeded("group order", order_cap)
                queue.append(y)
    return FiniteMatrixGroup(degree, gens, elements, labels)


def conjugacy_classes(G: FiniteMatrixGroup) -> list[list[int]]:
    """Conjugacy classes as sorted index lists, ordered by smallest member.

    The identity class comes first.
    """
    if G._classes is not None:
        return G._classes
    gens = G.generator_indices
    gens_inv = [G.inverse(g) for g in gens]
    assigned = [False] * G.order
    classes = []
    for a in range(G.order):
        if assigned[a]:
            continue
        cls = {a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for g, gi in zip(gens, gens_inv):
                y = G.mul(G.mul(g, x), gi)
                if y not in cls:
                    cls.add(y)
                    queue.append(y)
        for y in cls:
            assigned[y] = True
        classes.append(sorted(cls))
    G._classes = classes
    return classes


def class_of(G: FiniteMatrixGroup) -> list[int]:
    """Map element index -> class index."""
    out = [0] * G.order
    for k, cls in enumerate(conjugacy_classes(G)):
        for x in cls:
            out[x] = k
    return out


def prime_order_elements(G: FiniteMatrixGroup) -> list[int]:
    """One generator for each cyclic subgroup of prime order."""
    seen = set()
    reps = []
    for a in range(1, G.order):
        o = G.element_order(a)
        if not _is_prime(o) or a in seen:
            continue
        sub = G.subgroup_generated([a])
        seen.update(sub)
        reps.append(a)
    return reps


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
