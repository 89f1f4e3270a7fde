"""Fibonacci presentations F(r, n) and homomorphisms into Bieberbach groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from crystalkit.errors import DimensionMismatch, InvalidInput, NoSolution
from crystalkit.exactmath import matrices as mx
from crystalkit.exactmath.normal_forms import elementary_divisors, lattice_basis, solve_integer_linear
from crystalkit.crystal import Abelianization, CrystalGroup, GroupElement

EPI = "Epi"
HOMOMORPHISM_ONLY = "HomomorphismOnly"
NOT_HOMOMORPHISM = "NotHomomorphism"

Word = tuple  # nonzero ints; +k is generator k (1-based), -k its inverse


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("letters are nonzero")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    generators: int
    relators: tuple  # tuple of Words

    def __post_init__(self):
        for r in self.relators:
            if free_reduce(r) != tuple(r):
                raise InvalidInput("relators must be freely reduced")
            if any(abs(x) > self.generators for x in r):
                raise InvalidInput("generator index out of range")

    def relation_matrix(self) -> list[list[int]]:
        rows = []
        for r in self.relators:
            row = [0] * self.generators
            for x in r:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows

    def abelianization(self) -> Abelianization:
        R = self.relation_matrix()
        divs = elementary_divisors(R) if R else []
        return Abelianization(self.generators - len(divs), tuple(d for d in divs if d > 1))


def fibonacci_presentation(r: int, n: int) -> Presentation:
    """Relators a_i a_{i+1} ... a_{i+r-1} a_{i+r}^{-1}, subscripts mod n."""
    if r <= 0 or n <= 0:
        raise InvalidInput("r and n must be positive")
    rels = []
    for i in range(n):
        word = [((i + k) % n) + 1 for k in range(r)] + [-(((i + r) % n) + 1)]
        rels.append(free_reduce(word))
    return Presentation(n, tuple(rels))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _identity(n: int) -> GroupElement:
    return GroupElement.of(mx.identity(n), [0] * n)


def evaluate(word: Word, images: Sequence[GroupElement], inverses=None) -> GroupElement:
    inverses = inverses or [g.inverse() for g in images]
    out = _identity(images[0].n)
    for x in word:
        out = out * (images[x - 1] if x > 0 else inverses[-x - 1])
    return out


@dataclass
class EpiReport:
    verdict: str
    diagnostic: str = ""
    lattice_index: int | None = None
    failing_relator: int | None = None
    images: list = field(default_factory=list)


def _word_closure(images: Sequence[GroupElement], length: int) -> list[GroupElement]:
    letters = list(images) + [g.inverse() for g in images]
    seen = {_identity(images[0].n)}
    frontier = list(seen)
    for _ in range(length):
        nxt = []
        for g in frontier:
            for a in letters:
                x = g * a
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return sorted(seen, key=lambda g: (g.h, g.t))


def check_epimorphism(P: Presentation, G: CrystalGroup, assignment: Sequence[GroupElement],
                      bound: int = 4) -> EpiReport:
    """Relators must evaluate to the identity; surjectivity is certified up to word length ``bound``."""
    if len(assignment) != P.generators:
        raise DimensionMismatch(f"expected {P.generators} images, got {len(assignment)}")
    if any(g.n != G.n or len(g.h) != G.n for g in assignment):
        raise DimensionMismatch("image dimension differs from the group dimension")
    for g in assignment:
        if not G.element_of(g):
            raise InvalidInput("an image does not lie in the group")
    images = list(assignment)
    inverses = [g.inverse() for g in images]
    for k, rel in enumerate(P.relators):
        if not evaluate(rel, images, inverses).is_identity():
            return EpiReport(NOT_HOMOMORPHISM, f"relator {k} does not evaluate to the identity",
                             failing_relator=k, images=images)

    H = G.holonomy
    hol = [H.index[mx.freeze(g.h)] for g in images]
    if len(H.subgroup_generated(hol)) != H.order:
        return EpiReport(HOMOMORPHISM_ONLY, "holonomy parts do not generate H", images=images)

    words = _word_closure(images, bound)
    trans = [list(g.t) for g in words if g.is_translation()]
    short = _word_closure(images, min(2, bound))
    for a in short:
        ai = a.inverse()
        for b in short:
            c = a * b * ai * b.inverse()
            if c.is_translation():
                trans.append(list(c.t))
    vecs = [[int(x) for x in t] for t in trans if any(x != 0 for x in t)]
    basis = lattice_basis(vecs, G.n) if vecs else []
    if len(basis) < G.n:
        return EpiReport(HOMOMORPHISM_ONLY, f"translations found span rank {len(basis)} < {G.n} at bound {bound}",
                         images=images)
    index = abs(mx.det(basis))
    if index != 1:
        return EpiReport(HOMOMORPHISM_ONLY, f"translation sublattice of index {index} at bound {bound}",
                         lattice_index=int(index), images=images)
    return EpiReport(EPI, "holonomy generated and lattice index 1", lattice_index=1, images=images)


# ---------------------------------------------------------------------------
# search for the Fibonacci epimorphism
# ---------------------------------------------------------------------------

def _affine_compose(A, B):
    """(h1, M1, c1) * (h2, M2, c2): translation t1 + h1 t2 with t = M z + c."""
    h1, M1, c1 = A
    h2, M2, c2 = B
    hM2 = mx.matmul(h1, M2)
    return (mx.matmul(h1, h2), mx.add(M1, hM2), mx.vadd(c1, mx.matvec(h1, c2)))


def fibonacci_epimorphism_search(r: int, m: int, G: CrystalGroup, bound: int = 4,
                                 kernel_range: int = 1, limit: int | None = None) -> list[EpiReport]:
    """Certified epimorphisms F(r, m) -> G.

    Holonomy images of a_1..a_r are enumerated; the remaining generators are
    forced by the relators, and the translation parts of a_1..a_r are then
    solved over Z from the wrap-around relators.  Small kernel combinations
    of each solution are tried as well.
    """
    P = fibonacci_presentation(r, m)
    H = G.holonomy
    n = G.n
    N = r * n
    found: list[EpiReport] = []
    for choice in product(range(H.order), repeat=r):
        hol = list(choice)
        for i in range(r, m):
            x = 0
            for k in range(r):
                x = H.mul(x, hol[i - r + k])
            hol.append(x)
        ok = True
        for i in range(m - r, m):
            x = 0
            for k in range(r):
                x = H.mul(x, hol[(i + k) % m])
            if x != hol[(i + r) % m]:
                ok = False
                break
        if not ok or len(H.subgroup_generated(hol)) != H.order:
            continue
        # affine parametrization: a_j = (h_j, M_j z + c_j), z in Z^{r n}
        sym = []
        for j in range(r):
            M = mx.zeros(n, N)
            for t in range(n):
                M[t][j * n + t] = 1
            sym.append((mx.to_ints(H.elements[hol[j]]), M, list(G.vectors[hol[j]])))
        for i in range(r, m):
            acc = sym[i - r]
            for k in range(1, r):
                acc = _affine_compose(acc, sym[i - r + k])
            sym.append(acc)
        rows, rhs = [], []
        for i in range(m - r, m):
            acc = sym[i % m]
            for k in range(1, r):
                acc = _affine_compose(acc, sym[(i + k) % m])
            target = sym[(i + r) % m]
            D = mx.sub(acc[1], target[1])
            e = mx.vsub(target[2], acc[2])
            rows.extend(D)
            rhs.extend(e)
        if any(Fraction(x).denominator != 1 for x in rhs):
            continue
        try:
            sol = solve_integer_linear(rows, [int(x) for x in rhs])
        except NoSolution:
            continue
        kern = sol.kernel
        coeff_sets = product(range(-kernel_range, kernel_range + 1), repeat=len(kern)) if len(kern) <= 6 \
            else [tuple([0] * len(kern))]
        for coeffs in coeff_sets:
            z = list(sol.particular)
            for c, v in zip(coeffs, kern):
                if c:
                    z = [a + c * b for a, b in zip(z, v)]
            imgs = [GroupElement.of(h, mx.vadd(mx.matvec(M, z), c)) for h, M, c in sym]
            rep = check_epimorphism(P, G, imgs, bound)
            if rep.verdict == EPI:
                found.append(rep)
                break
        if limit is not None and len(found) >= limit:
            break
    return found
