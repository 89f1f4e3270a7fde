"""Hilbert symbols over Q and definiteness of rational quadratic forms."""

from __future__ import annotations

from fractions import Fraction

from crystalkit.exactmath import matrices as mx

INFINITY = "inf"


def _square_free_int(q: Fraction) -> int:
    """Integer in the same square class as the nonzero rational ``q``."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no square class")
    # q = n/d lies in the class of n*d
    return q.numerator * q.denominator


def _valuation(x: int, p: int) -> tuple[int, int]:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


def hilbert_symbol(a, b, p) -> int:
    """(a, b)_p for nonzero rationals a, b at a prime p or at ``"inf"``."""
    a, b = _square_free_int(a), _square_free_int(b)
    if p == INFINITY:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _valuation(a, p)
    beta, v = _valuation(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * (_legendre(u, p) ** beta) * (_legendre(v, p) ** alpha)


def _odd_primes(x: int) -> list[int]:
    x = abs(x)
    out = []
    d = 3
    while x % 2 == 0:
        x //= 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 2
    if x > 1:
        out.append(x)
    return out


def hilbert_symbol_places(a, b) -> dict:
    """Symbols at infinity, 2 and every odd prime dividing the square classes of a and b.

    All other places give +1.  The quaternion algebra (a, b)_Q is a
    division algebra iff some value is -1.
    """
    ia, ib = _square_free_int(a), _square_free_int(b)
    places = [INFINITY, 2] + sorted(set(_odd_primes(ia)) | set(_odd_primes(ib)))
    return {p: hilbert_symbol(a, b, p) for p in places}


def positive_definite(G) -> bool:
    """Sylvester's criterion: all leading principal minors positive."""
    n = len(G)
    return all(mx.det([row[:k] for row in G[:k]]) > 0 for k in range(1, n + 1))
