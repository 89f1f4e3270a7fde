"""Commutant algebras of integral representations and their simple blocks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from crystalkit.errors import GenericElementFailure
from crystalkit.exactmath import matrices as mx
from crystalkit.exactmath.polynomials import (
    RatPoly,
    factor_rational_poly,
    is_squarefree,
    minimal_polynomial_of_vectors,
    poly_invmod,
)
from crystalkit.groups import CharacterTable, FiniteMatrixGroup, character_table, close_group
from crystalkit.repanalysis.quaternion import hilbert_symbol_places, positive_definite


RATIONAL_FIELD = "RationalField"
IMAGINARY_QUADRATIC = "ImaginaryQuadratic"
DEFINITE_QUATERNION = "DefiniteQuaternion"
INFINITE_UNITS = "InfiniteUnits"
FINITE_UNIT_KINDS = (RATIONAL_FIELD, IMAGINARY_QUADRATIC, DEFINITE_QUATERNION)


@dataclass
class IntegralRep:
    """A finite subgroup of GL(n, Z) viewed as the image of a faithful representation."""

    group: FiniteMatrixGroup
    labels: list[str] = field(default_factory=list)
    _table: CharacterTable | None = field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def generators(self) -> list:
        return [[list(r) for r in g] for g in self.group.generators]

    def table(self) -> CharacterTable:
        if self._table is None:
            self._table = character_table(self.group)
        return self._table

    def character(self) -> list[int]:
        """Trace of the representation on each conjugacy class."""
        T = self.table()
        return [sum(self.group.elements[z][i][i] for i in range(self.degree)) for z in T.representatives]


def integral_rep(gens: Sequence, degree: int | None = None, labels=None) -> IntegralRep:
    G = close_group(gens, degree=degree, labels=labels)
    return IntegralRep(G, list(G.labels))


def conjugate_rep(rho: IntegralRep, U) -> IntegralRep:
    """The representation ``h -> U h U^{-1}`` for unimodular ``U``."""
    Ui = mx.int_inverse(U)
    gens = [mx.matmul(mx.matmul(U, g), Ui) for g in rho.generators]
    return integral_rep(gens, degree=rho.degree, labels=rho.labels)


# ---------------------------------------------------------------------------
# commutant
# ---------------------------------------------------------------------------

@dataclass
class CommutantAlgebra:
    degree: int
    basis: list            # list of n x n Fraction matrices

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, X) -> list[Fraction] | None:
        cols = mx.transpose([_flat(B) for B in self.basis])
        return mx.solve(cols, _flat(X))

    def contains(self, X) -> bool:
        return self.coordinates(X) is not None


def _flat(X) -> list:
    return [x for row in X for x in row]


def _unflat(v, n: int) -> list:
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def commutant(rho: IntegralRep) -> CommutantAlgebra:
    """Rational matrices X with X g = g X for every generator g."""
    n = rho.degree
    rows = []
    for g in rho.generators:
        # (X g - g X)_{ij} as a linear form in the entries X_{kl} (index k*n + l)
        for i in range(n):
            for j in range(n):
                eq = [0] * (n * n)
                for k in range(n):
                    eq[i * n + k] += g[k][j]
                    eq[k * n + j] -= g[i][k]
                rows.append(eq)
    basis = [_unflat(v, n) for v in mx.nullspace(rows, n * n)] if rows else \
        [_unflat([Fraction(int(t == s)) for t in range(n * n)], n) for s in range(n * n)]
    return CommutantAlgebra(n, basis)


def _span_basis(mats) -> list:
    """Echelon basis of the Q-span of matrices."""
    if not mats:
        return []
    n = len(mats[0])
    R, piv = mx.rref([_flat(M) for M in mats])
    return [_unflat(R[i], n) for i in range(len(piv))]


def center_basis(A: CommutantAlgebra) -> list:
    """Basis of the center of the commutant."""
    B = A.basis
    m = len(B)
    rows = []
    for Y in B:
        comms = [mx.sub(mx.matmul(X, Y), mx.matmul(Y, X)) for X in B]
        flat = [_flat(C) for C in comms]
        for t in range(len(flat[0])):
            rows.append([flat[i][t] for i in range(m)])
    coeffs = mx.nullspace(rows, m)
    return [_lin(c, B) for c in coeffs]


def _lin(coeffs, mats):
    n = len(mats[0])
    out = [[Fraction(0)] * n for _ in range(n)]
    for c, M in zip(coeffs, mats):
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] += c * M[i][j]
    return out


def matrix_minimal_polynomial(X) -> RatPoly:
    n = len(X)
    powers = [mx.identity(n)]
    vecs = [_flat(powers[0])]
    for _ in range(n):
        powers.append(mx.matmul(powers[-1], X))
        vecs.append(_flat(powers[-1]))
    return minimal_polynomial_of_vectors(vecs)


def generic_center_element(Z: list, seed: int = 0, trials: int = 6, max_rounds: int = 6):
    """Random element of the center generating it as an algebra.

    Coefficients start in [-5, 5] and the range doubles after each round
    of failed trials.
    """
    rng = random.Random(seed)
    bound = 5
    d = len(Z)
    for _ in range(max_rounds):
        for _ in range(trials):
            coeffs = [rng.randint(-bound, bound) for _ in range(d)]
            z = _lin(coeffs, Z)
            mp = matrix_minimal_polynomial(z)
            if mp.degree == d and is_squarefree(mp):
                return z, mp
        bound *= 2
    raise GenericElementFailure(f"no generic center element in {trials * max_rounds} trials")


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------

@dataclass
class BlockReport:
    dimension: int
    center_degree: int
    center_polynomial: RatPoly
    classification: str
    idempotent: list
    basis: list
    commutative: bool
    division: bool | None          # None when undecided
    constituents: list[int] = field(default_factory=list)
    multiplicity: int = 0          # a_chi of each constituent inside the block
    quaternion_symbol: tuple | None = None


def block_decomposition(A: CommutantAlgebra, seed: int = 0) -> list[BlockReport]:
    """Split the commutant by the central idempotents of a generic center element."""
    n = A.degree
    Z = center_basis(A)
    z, mp = generic_center_element(Z, seed=seed)
    factors = [f for f, _ in factor_rational_poly(mp)]
    idems = []
    for f in factors:
        g = mp // f
        e_poly = (g * poly_invmod(g % f, f)) % mp
        idems.append(e_poly.eval_matrix(z))
    _check_idempotents(idems, A, n)
    blocks = []
    for f, e in zip(factors, idems):
        basis = _span_basis([mx.matmul(X, e) for X in A.basis])
        commutative = all(mx.matmul(X, Y) == mx.matmul(Y, X) for X in basis for Y in basis)
        blocks.append(_classify(f, e, basis, commutative))
    if sum(b.dimension for b in blocks) != A.dimension:
        raise ArithmeticError("block dimensions do not add up")
    return blocks


def _check_idempotents(idems, A: CommutantAlgebra, n: int) -> None:
    total = mx.zeros(n, n)
    for i, e in enumerate(idems):
        if mx.matmul(e, e) != e:
            raise ArithmeticError("central element is not idempotent")
        for j in range(i):
            if not mx.is_zero(mx.matmul(e, idems[j])):
                raise ArithmeticError("idempotents are not orthogonal")
        for X in A.basis:
            if mx.matmul(X, e) != mx.matmul(e, X):
                raise ArithmeticError("idempotent is not central")
        total = mx.add(total, e)
    if not mx.is_identity(total):
        raise ArithmeticError("idempotents do not sum to the identity")


def _left_mult(x, basis) -> list:
    """Matrix of left multiplication by x on the block, in the given basis."""
    cols = mx.transpose([_flat(B) for B in basis])
    out = []
    for B in basis:
        c = mx.solve(cols, _flat(mx.matmul(x, B)))
        if c is None:
            raise ArithmeticError("block not closed under multiplication")
        out.append(c)
    return mx.transpose(out)


def _trace(M) -> Fraction:
    return sum((M[i][i] for i in range(len(M))), Fraction(0))


def _reduced_trace(x, basis) -> Fraction:
    # L_x on a quaternion algebra has characteristic polynomial (reduced char poly)^2
    return _trace(_left_mult(x, basis)) / 2


def reduced_norm_gram(basis) -> list:
    """Gram matrix of nrd(x) = (trd(x)^2 - trd(x^2)) / 2 on a 4-dim central simple block."""

    def nrd(x):
        t = _reduced_trace(x, basis)
        return (t * t - _reduced_trace(mx.matmul(x, x), basis)) / 2

    k = len(basis)
    q = [nrd(B) for B in basis]
    G = [[Fraction(0)] * k for _ in range(k)]
    for a in range(k):
        G[a][a] = q[a]
        for b in range(a + 1, k):
            G[a][b] = G[b][a] = (nrd(mx.add(basis[a], basis[b])) - q[a] - q[b]) / 2
    return G


def quaternion_symbol(basis, e) -> tuple[Fraction, Fraction] | None:
    """(a, b) with the block isomorphic to the quaternion algebra (a, b)_Q.

    Returns None when a nonzero pure quaternion squares to zero, which
    already exhibits a zero divisor (the block is split).
    """
    i = None
    for x in basis:
        t = _reduced_trace(x, basis)
        cand = mx.sub(x, mx.scale(t / 2, e))
        if not mx.is_zero(cand):
            i = cand
            break
    ii = mx.matmul(i, i)
    a = _scalar_in_block(ii, e)
    if a == 0:
        return None
    for y in basis:
        j = mx.sub(mx.matmul(i, y), mx.matmul(y, i))
        if not mx.is_zero(j):
            b = _scalar_in_block(mx.matmul(j, j), e)
            return (a, b) if b != 0 else None
    raise ArithmeticError("block is commutative")


def _scalar_in_block(x, e) -> Fraction:
    n = len(e)
    for r in range(n):
        for c in range(n):
            if e[r][c] != 0:
                s = x[r][c] / e[r][c]
                if mx.scale(s, e) != x:
                    raise ArithmeticError("pure quaternion squares to a non-scalar")
                return s
    raise ArithmeticError("zero idempotent")


def _classify(f: RatPoly, e, basis, commutative: bool) -> BlockReport:
    dim = len(basis)
    deg = f.degree
    kind = INFINITE_UNITS
    division = None
    symbol = None
    if commutative:
        division = True
        if dim == 1:
            kind = RATIONAL_FIELD
        elif dim == 2:
            b, c = f.coeffs[1], f.coeffs[0]
            if b * b - 4 * c < 0:
                kind = IMAGINARY_QUADRATIC
    elif dim == 4 and deg == 1:
        symbol = quaternion_symbol(basis, e)
        division = symbol is not None and any(s == -1 for s in hilbert_symbol_places(*symbol).values())
        if positive_definite(reduced_norm_gram(basis)):
            kind = DEFINITE_QUATERNION
    return BlockReport(dim, deg, f, kind, e, basis, commutative, division, quaternion_symbol=symbol)
