"""Univariate polynomials over Q.

``RatPoly`` stores coefficients lowest degree first.  Factorization over Q
delegates to sympy's ``factor_list`` (square-free decomposition, modular
factorization with Hensel lifting and recombination under the Mignotte
bound); everything else is native.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import sympy

from crystalkit.exactmath import matrices as mx

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class RatPoly:
    coeffs: tuple  # tuple[Fraction, ...], lowest degree first, no trailing zeros

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # construction --------------------------------------------------------
    @classmethod
    def x(cls) -> "RatPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Sequence) -> "RatPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    # basic properties ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        lc = self.lead
        return RatPoly(c / lc for c in self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic ----------------------------------------------------------
    def __add__(self, other: "RatPoly") -> "RatPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RatPoly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "RatPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "RatPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "RatPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RatPoly":
        out = RatPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return RatPoly(), self
        q = [Fraction(0)] * (dq + 1)
        lc = other.lead
        for k in range(dq, -1, -1):
            c = r[k + other.degree] / lc
            q[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    r[k + j] -= c * y
        return RatPoly(q), RatPoly(r[: other.degree])

    def __floordiv__(self, other) -> "RatPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "RatPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    # evaluation ------------------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, A) -> list:
        n = len(A)
        acc = mx.zeros(n, n)
        for c in reversed(self.coeffs):
            acc = mx.matmul(acc, A)
            for i in range(n):
                acc[i][i] += c
        return acc

    # conversions -----------------------------------------------------------
    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)] or [0],
                          _X, domain=sympy.QQ)

    @classmethod
    def from_sympy(cls, p: sympy.Poly) -> "RatPoly":
        return cls(Fraction(int(c.p), int(c.q)) if hasattr(c, "p") else _to_fraction(c)
                   for c in reversed(p.all_coeffs()))

    def integer_primitive(self) -> list[int]:
        """Coprime integer coefficients (lowest first) of a rational multiple."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        g = g or 1
        if ints and ints[-1] < 0:
            g = -g
        return [v // g for v in ints]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mon and abs(c) == 1:
                coef = "-" if c < 0 else "+"
                terms.append(f"{coef}{mon}")
            else:
                terms.append(f"{'+' if c > 0 else '-'}{abs(c)}{('*' + mon) if mon else ''}")
        s = " ".join(terms)
        return s[1:] if s.startswith("+") else s


def _to_fraction(c) -> Fraction:
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def _coerce(p) -> RatPoly:
    return p if isinstance(p, RatPoly) else RatPoly((p,))


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: RatPoly, b: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """Return ``(g, s, t)`` with ``s a + t b = g`` monic."""
    r0, r1 = a, b
    s0, s1 = RatPoly((1,)), RatPoly()
    t0, t1 = RatPoly(), RatPoly((1,))
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lc = r0.lead
    return r0.monic(), s0 * RatPoly((1 / lc,)), t0 * RatPoly((1 / lc,))


def poly_invmod(a: RatPoly, m: RatPoly) -> RatPoly:
    g, s, _ = poly_xgcd(a, m)
    if g.degree != 0:
        raise ZeroDivisionError("not invertible modulo m")
    return s % m


def is_squarefree(p: RatPoly) -> bool:
    return poly_gcd(p, p.derivative()).degree == 0


def factor_rational_poly(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Irreducible monic factors of ``p`` over Q with multiplicities.

    Sorted by (degree, coefficients) for determinism.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    _, facs = p.to_sympy().factor_list()
    out = [(RatPoly.from_sympy(f).monic(), int(k)) for f, k in facs]
    out.sort(key=lambda fk: (fk[0].degree, fk[0].coeffs, fk[1]))
    return out


def charpoly(A) -> RatPoly:
    """Characteristic polynomial ``det(x I - A)`` via Hessenberg reduction."""
    n = len(A)
    if n == 0:
        return RatPoly((1,))
    H = mx.to_fractions(A)
    for m in range(1, n - 1):
        p = next((i for i in range(m, n) if H[i][m - 1] != 0), None)
        if p is None:
            continue
        if p != m:
            H[p], H[m] = H[m], H[p]
            for row in H:
                row[p], row[m] = row[m], row[p]
        piv = H[m][m - 1]
        for i in range(m + 1, n):
            f = H[i][m - 1] / piv
            if f:
                H[i] = [a - f * b for a, b in zip(H[i], H[m])]
                for row in H:
                    row[m] += f * row[i]
    # recurrence on the leading principal submatrices of the Hessenberg form
    polys = [RatPoly((1,))]
    for k in range(1, n + 1):
        pk = RatPoly((-H[k - 1][k - 1], 1)) * polys[k - 1]
        prod = Fraction(1)
        for i in range(k - 1, 0, -1):
            prod *= H[i][i - 1]
            if prod == 0:
                break
            pk = pk - RatPoly((prod * H[i - 1][k - 1],)) * polys[i - 1]
        polys.append(pk)
    return polys[n]


def minimal_polynomial_of_vectors(vectors: list[list[Fraction]]) -> RatPoly:
    """Monic relation of least degree among ``vectors[0..k]`` (powers of an
    element expressed in some fixed basis).  Expects a dependency to exist."""
    for k in range(1, len(vectors)):
        cols = mx.transpose(vectors[:k])
        sol = mx.solve(cols, vectors[k])
        if sol is not None:
            return RatPoly([-c for c in sol] + [1])
    raise ValueError("no linear dependency among the supplied powers")


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> RatPoly:
    """The k-th cyclotomic polynomial."""
    p = RatPoly([-1] + [0] * (k - 1) + [1])
    for d in range(1, k):
        if k % d == 0:
            p = p // cyclotomic(d)
    return p
