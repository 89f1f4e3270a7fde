"""Exact Clifford algebras of diagonal rational forms and lifts of SO(S) to Spin.

A basis monomial e_S is stored as a bitmask S (bit i is e_{i+1}).  Products
use e_i e_j = -e_j e_i for i != j and e_i^2 = q_i.  An element x together
with a positive rational scale mu stands for the Pin element x / sqrt(mu), so
unit-norm reflections never need square roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from crystalkit.errors import InternalCheckFailure, NotOrthogonal, NotSpecial
from crystalkit.exactmath import matrices as mx


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _monomial_sign(a: int, b: int) -> int:
    """Sign from reordering e_A e_B into increasing order (squares not yet applied)."""
    swaps = 0
    a >>= 1
    while a:
        swaps += _popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def _rational_sqrt(x: Fraction) -> Fraction | None:
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


@dataclass(frozen=True)
class CliffordElement:
    q: tuple                                # diagonal form values
    coeffs: tuple                           # sorted (mask, Fraction) pairs, nonzero only
    mu: Fraction = Fraction(1)              # represents x / sqrt(mu)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_dict(cls, q, coeffs: dict, mu=1) -> "CliffordElement":
        items = tuple(sorted((m, Fraction(c)) for m, c in coeffs.items() if c != 0))
        return cls(tuple(Fraction(x) for x in q), items, Fraction(mu))

    @classmethod
    def scalar(cls, q, c=1, mu=1) -> "CliffordElement":
        return cls.from_dict(q, {0: c}, mu)

    @classmethod
    def vector(cls, q, v) -> "CliffordElement":
        """The vector sum v_i e_i, scaled by its own norm so it represents a unit vector."""
        x = cls.from_dict(q, {1 << i: c for i, c in enumerate(v)})
        return cls(x.q, x.coeffs, abs(x.norm()))

    # -- arithmetic ---------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.q)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def _square_factor(self, common: int) -> Fraction:
        out = Fraction(1)
        i = 0
        while common:
            if common & 1:
                out *= self.q[i]
            common >>= 1
            i += 1
        return out

    def __mul__(self, other: "CliffordElement") -> "CliffordElement":
        if self.q != other.q:
            raise ValueError("Clifford elements over different forms")
        acc: dict = {}
        for a, ca in self.coeffs:
            for b, cb in other.coeffs:
                c = ca * cb * _monomial_sign(a, b) * self._square_factor(a & b)
                acc[a ^ b] = acc.get(a ^ b, 0) + c
        return CliffordElement.from_dict(self.q, acc, self.mu * other.mu)

    def __neg__(self) -> "CliffordElement":
        return CliffordElement(self.q, tuple((m, -c) for m, c in self.coeffs), self.mu)

    def reverse(self) -> "CliffordElement":
        """Reverse the order of factors in every monomial."""
        out = {}
        for m, c in self.coeffs:
            k = _popcount(m)
            out[m] = c if (k * (k - 1) // 2) % 2 == 0 else -c
        return CliffordElement.from_dict(self.q, out, self.mu)

    def inverse(self) -> "CliffordElement":
        """Inverse of a Pin element: x^rev / sqrt(mu) after normalizing x x^rev = mu."""
        nrm = self.norm()
        if nrm != self.mu:
            raise InternalCheckFailure("element does not have unit spinor norm")
        return self.reverse()

    def simplify(self) -> "CliffordElement":
        """Absorb sqrt(mu) into the coefficients when mu is a rational square."""
        r = _rational_sqrt(self.mu)
        if r is None:
            return self
        return CliffordElement(self.q, tuple((m, c / r) for m, c in self.coeffs), Fraction(1))

    def is_scalar(self) -> bool:
        return all(m == 0 for m, _ in self.coeffs)

    def scalar_part(self) -> Fraction:
        return dict(self.coeffs).get(0, Fraction(0))

    def norm(self) -> Fraction:
        """x x^rev, which must be a rational scalar for products of vectors."""
        p = CliffordElement(self.q, self.coeffs) * CliffordElement(self.q, self.reverse().coeffs)
        if not p.is_scalar():
            raise InternalCheckFailure("x x^rev is not scalar")
        return p.scalar_part()

    def is_even(self) -> bool:
        return all(_popcount(m) % 2 == 0 for m, _ in self.coeffs)

    def relative_sign(self, other: "CliffordElement") -> int | None:
        """+1 if the represented Pin elements agree, -1 if they differ by sign, else None.

        x / sqrt(mu) = y / sqrt(nu) iff x y^rev = s is a scalar with s > 0 and s^2 = mu nu.
        """
        s = CliffordElement(self.q, self.coeffs) * CliffordElement(self.q, other.reverse().coeffs)
        if not s.is_scalar():
            return None
        v = s.scalar_part()
        if v * v != self.mu * other.mu:
            return None
        return 1 if v > 0 else -1

    def act(self, v) -> list[Fraction]:
        """Twisted conjugation of the vector v by this (even) element."""
        if not self.is_even():
            raise ValueError("twisted conjugation implemented for even elements only")
        x = CliffordElement(self.q, self.coeffs)
        y = x * CliffordElement.from_dict(self.q, {1 << i: c for i, c in enumerate(v)}) \
            * CliffordElement(self.q, self.reverse().coeffs)
        out = [Fraction(0)] * self.n
        for m, c in y.coeffs:
            if _popcount(m) != 1:
                raise InternalCheckFailure("conjugate of a vector left the vector space")
            out[m.bit_length() - 1] = c / self.mu
        return out


# ---------------------------------------------------------------------------
# invariant forms and lifts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantForm:
    S: tuple                 # sum of h^T h
    P: tuple                 # columns form an S-orthogonal basis
    q: tuple                 # P^T S P = diag(q)


def invariant_form(mats) -> InvariantForm:
    mats = [mx.to_ints(m) for m in mats]
    n = len(mats[0])
    S = mx.zeros(n, n)
    for h in mats:
        S = mx.add(S, mx.matmul(mx.transpose(h), h))
    for h in mats:
        if mx.matmul(mx.matmul(mx.transpose(h), S), h) != S:
            raise InternalCheckFailure("averaged form is not invariant")
    # Gram-Schmidt on the standard basis with respect to S
    S_f = mx.to_fractions(S)
    basis: list[list[Fraction]] = []
    q = []
    for j in range(n):
        v = [Fraction(int(i == j)) for i in range(n)]
        for b, qb in zip(basis, q):
            c = mx.dot(b, mx.matvec(S_f, v)) / qb
            v = [x - c * y for x, y in zip(v, b)]
        basis.append(v)
        q.append(mx.dot(v, mx.matvec(S_f, v)))
    P = mx.transpose(basis)
    D = mx.matmul(mx.matmul(mx.transpose(P), S_f), P)
    if any(D[i][j] != (q[i] if i == j else 0) for i in range(n) for j in range(n)) or min(q) <= 0:
        raise InternalCheckFailure("congruence diagonalization failed")
    return InvariantForm(mx.freeze(S), mx.freeze(P), tuple(q))


def clifford_lift(A, q) -> CliffordElement:
    """A lift to Spin of A, orthogonal for diag(q); one of the two preimages."""
    n = len(A)
    A = mx.to_fractions(A)
    q = [Fraction(x) for x in q]
    D = [[q[i] if i == j else 0 for j in range(n)] for i in range(n)]
    if mx.matmul(mx.matmul(mx.transpose(A), D), A) != D:
        raise NotOrthogonal("A^T S A != S")
    if mx.det(A) != 1:
        raise NotSpecial("determinant is not 1")
    M = A
    reflections = []
    for i in range(n):
        col = [M[r][i] for r in range(n)]
        e = [Fraction(int(r == i)) for r in range(n)]
        if col == e:
            continue
        u = [a - b for a, b in zip(col, e)]
        Qu = sum(qq * x * x for qq, x in zip(q, u))
        # reflection in u^perp swaps col and e_i
        R = [[Fraction(int(r == c)) - 2 * u[r] * q[c] * u[c] / Qu for c in range(n)] for r in range(n)]
        M = mx.matmul(R, M)
        reflections.append(u)
    if not mx.is_identity(M):
        raise InternalCheckFailure("reflection factorization did not terminate at I")
    if len(reflections) % 2:
        raise InternalCheckFailure("odd reflection count for a special matrix")
    x = CliffordElement.scalar(q)
    for u in reflections:
        x = x * CliffordElement.vector(q, u)
    for j in range(n):
        col = [A[r][j] for r in range(n)]
        if x.act([Fraction(int(r == j)) for r in range(n)]) != col:
            raise InternalCheckFailure("lift does not reproduce A")
    return x
