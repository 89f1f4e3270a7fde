"""Spin structures on orientable flat manifolds by exhaustive sign search."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from crystalkit.errors import DimensionCap, InternalCheckFailure, NotOrientable
from crystalkit.exactmath import matrices as mx
from crystalkit.crystal import CrystalGroup, GroupElement, abelianization
from crystalkit.spin.clifford import CliffordElement, clifford_lift, invariant_form

MAX_DIMENSION = 8

Word = tuple  # of (generator index, +1 or -1)


@dataclass(frozen=True)
class Relation:
    label: str
    lhs: Word
    rhs: Word


@dataclass
class SpinLift:
    labels: list                     # generator names: t1..tn, g1..gk
    signs: tuple                     # +1 / -1 per generator
    elements: list                   # signed CliffordElement per generator
    transcript: list = field(default_factory=list)   # (relation label, passed)


@dataclass
class SpinStructures:
    count: int
    lifts: list
    relations: list
    expected: int                    # 2^{rank of H^1(Gamma, Z/2)}

    @property
    def exists(self) -> bool:
        return self.count > 0


# ---------------------------------------------------------------------------
# presentation
# ---------------------------------------------------------------------------

def _t_word(c) -> Word:
    out = []
    for m, k in enumerate(c):
        s = 1 if k > 0 else -1
        out.extend([(m, s)] * abs(k))
    return tuple(out)


def _element_words(G: CrystalGroup, n: int) -> tuple[dict, dict]:
    """A word in the holonomy generators for every h, and the affine element it spells."""
    H = G.holonomy
    gens = G.generators()[:len(H.generators)]
    words = {0: ()}
    elems = {0: GroupElement.of(mx.identity(n), [0] * n)}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for j, g in enumerate(gens):
            y = H.index[g.h]
            z = H.mul(x, y)
            if z not in words:
                words[z] = words[x] + ((n + j, 1),)
                elems[z] = elems[x] * g
                queue.append(z)
    return words, elems


def presentation(G: CrystalGroup) -> list[Relation]:
    """Lattice commutators, conjugation relations and the full multiplication table."""
    n = G.n
    H = G.holonomy
    gens = G.generators()[:len(H.generators)]
    rels = []
    for i in range(n):
        for j in range(i + 1, n):
            rels.append(Relation(f"[t{i + 1},t{j + 1}]", ((i, 1), (j, 1)), ((j, 1), (i, 1))))
    for k, g in enumerate(gens):
        for i in range(n):
            img = [g.h[r][i] for r in range(n)]
            rels.append(Relation(f"g{k + 1} t{i + 1} g{k + 1}^-1", ((n + k, 1), (i, 1), (n + k, -1)), _t_word(img)))
    words, elems = _element_words(G, n)
    for k, g in enumerate(gens):
        x = H.index[g.h]
        if words[x] != ((n + k, 1),):
            c = (g * elems[x].inverse()).t
            rels.append(Relation(f"g{k + 1} = word", ((n + k, 1),), _t_word([int(v) for v in c]) + words[x]))
    for a in range(H.order):
        for b in range(H.order):
            ab = H.mul(a, b)
            prod_ = elems[a] * elems[b] * elems[ab].inverse()
            if not prod_.is_translation() or any(v.denominator != 1 for v in prod_.t):
                raise InternalCheckFailure("multiplication table correction is not a lattice vector")
            rels.append(Relation(f"s{a} s{b} = t s{ab}", words[a] + words[b],
                                 _t_word([int(v) for v in prod_.t]) + words[ab]))
    return rels


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _evaluate(word: Word, images: list, one: CliffordElement) -> CliffordElement:
    x = one
    for g, e in word:
        x = x * (images[g] if e > 0 else images[g].inverse())
    return x


def _parity(word: Word, ngens: int) -> list[int]:
    out = [0] * ngens
    for g, _ in word:
        out[g] ^= 1
    return out


def spin_structures(G: CrystalGroup, keep_lifts: int | None = None) -> SpinStructures:
    n = G.n
    if n > MAX_DIMENSION:
        raise DimensionCap(n, MAX_DIMENSION)
    H = G.holonomy
    if not G.is_orientable():
        raise NotOrientable("some holonomy matrix has determinant -1")
    form = invariant_form(H.elements)
    P = mx.to_fractions(form.P)
    Pi = mx.inverse(P)
    one = CliffordElement.scalar(form.q)
    base = [one] * n
    for h in H.generators:
        base.append(clifford_lift(mx.matmul(mx.matmul(Pi, h), P), form.q))
    ngens = len(base)
    rels = presentation(G)
    # each relation under all-plus signs; other assignments flip it by a parity
    table = []
    for r in rels:
        s = _evaluate(r.lhs, base, one).relative_sign(_evaluate(r.rhs, base, one))
        if s is None:
            raise InternalCheckFailure(f"relation {r.label} fails beyond sign")
        pl, pr = _parity(r.lhs, ngens), _parity(r.rhs, ngens)
        table.append((s, [a ^ b for a, b in zip(pl, pr)]))
    labels = [f"t{i + 1}" for i in range(n)] + [f"g{k + 1}" for k in range(ngens - n)]
    lifts = []
    count = 0
    for signs in product((1, -1), repeat=ngens):
        ok = True
        for s, par in table:
            v = s
            for sg, p in zip(signs, par):
                if p and sg < 0:
                    v = -v
            if v != 1:
                ok = False
                break
        if not ok:
            continue
        count += 1
        if keep_lifts is None or len(lifts) < keep_lifts:
            imgs = [b if sg > 0 else -b for b, sg in zip(base, signs)]
            transcript = []
            for r in rels:
                passed = _evaluate(r.lhs, imgs, one).relative_sign(_evaluate(r.rhs, imgs, one)) == 1
                if not passed:
                    raise InternalCheckFailure(f"relation {r.label} fails on direct evaluation")
                transcript.append((r.label, passed))
            lifts.append(SpinLift(labels, signs, imgs, transcript))
    ab = abelianization(G)
    expected = 2 ** (ab.free_rank + sum(1 for d in ab.torsion if d % 2 == 0))
    if count and count != expected:
        raise InternalCheckFailure(f"{count} spin structures but |H^1(Gamma; Z/2)| = {expected}")
    return SpinStructures(count, lifts, rels, expected)
