"""Exact arithmetic in the cyclotomic field Q(zeta_e).

Elements are dense coefficient vectors in the power basis
``1, z, ..., z^{phi(e)-1}`` reduced modulo the e-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from crystalkit.exactmath.polynomials import cyclotomic


@lru_cache(maxsize=None)
def _modulus(e: int) -> tuple:
    return tuple(cyclotomic(e).coeffs)


def _reduce(e: int, coeffs: list) -> tuple:
    mod = _modulus(e)
    d = len(mod) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, d - 1, -1):
        f = c[k]
        if f:
            # subtract f * z^{k-d} * Phi_e (monic)
            for j, m in enumerate(mod):
                c[k - d + j] -= f * m
    c = c[:d] + [0] * max(0, d - len(c))
    return tuple(Fraction(x) for x in c)


class Cyclotomic:
    __slots__ = ("e", "c")

    def __init__(self, e: int, coeffs):
        self.e = e
        self.c = coeffs if isinstance(coeffs, tuple) and len(coeffs) == len(_modulus(e)) - 1 \
            else _reduce(e, list(coeffs))

    @classmethod
    def rational(cls, e: int, q) -> "Cyclotomic":
        return cls(e, [Fraction(q)])

    @classmethod
    def root_power(cls, e: int, k: int) -> "Cyclotomic":
        k %= e
        c = [0] * (k + 1)
        c[k] = 1
        return cls(e, c)

    @classmethod
    def from_exponent_counts(cls, e: int, counts: dict) -> "Cyclotomic":
        """Sum of ``m * zeta^k`` over ``counts = {k: m}``."""
        c = [0] * e
        for k, m in counts.items():
            c[k % e] += m
        return cls(e, c)

    def _full(self) -> list:
        return list(self.c)

    def __add__(self, other):
        other = self._coerce(other)
        return Cyclotomic(self.e, tuple(a + b for a, b in zip(self.c, other.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.e, tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.e, tuple(a * other for a in self.c))
        out = [Fraction(0)] * (2 * len(self.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        out[i + j] += a * b
        return Cyclotomic(self.e, out)

    __rmul__ = __mul__

    def __truediv__(self, q):
        if not isinstance(q, (int, Fraction)):
            raise TypeError("only division by rationals is supported")
        return Cyclotomic(self.e, tuple(a / q for a in self.c))

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.e != self.e:
                raise ValueError("field mismatch")
            return other
        return Cyclotomic.rational(self.e, other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return isinstance(other, Cyclotomic) and self.e == other.e and self.c == other.c

    def __hash__(self):
        return hash((self.e, self.c))

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k (k coprime to e)."""
        if gcd(k, self.e) != 1:
            raise ValueError("exponent must be coprime to e")
        out = [Fraction(0)] * self.e
        for i, a in enumerate(self.c):
            if a:
                out[(i * k) % self.e] += a
        return Cyclotomic(self.e, out)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(self.e - 1) if self.e > 1 else self

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.c[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0] if self.c else Fraction(0)

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.e)
        return sum(complex(float(a)) * z ** i for i, a in enumerate(self.c))

    def __repr__(self):
        terms = [f"{a}*z^{i}" if i else f"{a}" for i, a in enumerate(self.c) if a]
        return f"Cyc{self.e}(" + (" + ".join(terms) or "0") + ")"
