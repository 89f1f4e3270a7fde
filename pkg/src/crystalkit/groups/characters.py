"""Exact character tables by Dixon's method.

The class-algebra structure constants give commuting matrices whose common
eigenvectors over F_p (p = 1 mod exponent) are the central characters.
Values mod p are lifted to Q(zeta_e) by recovering eigenvalue
multiplicities on each cyclic subgroup, which are small nonnegative
integers because p > 2 sqrt|G|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from crystalkit.errors import CapExceeded
from crystalkit.exactmath import modp
from crystalkit.groups.cyclotomic import Cyclotomic
from crystalkit.groups.matgroup import DEFAULT_ORDER_CAP, FiniteMatrixGroup, class_of, conjugacy_classes


@dataclass
class CharacterTable:
    group: FiniteMatrixGroup
    classes: list            # list[list[int]]
    class_sizes: list        # list[int]
    representatives: list    # list[int]
    exponent: int
    characters: list         # list[list[Cyclotomic]], row = character
    indicators: list         # list[int] in {1, 0, -1}
    orbits: list             # list[list[int]] of character indices
    power_maps: dict         # s -> list[class index], s in 0..max(e, 2) and -1

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def degree(self, i: int) -> int:
        return int(self.characters[i][0].to_rational())

    def orbit_of(self, i: int) -> list[int]:
        return next(o for o in self.orbits if i in o)

    def conjugate_index(self, i: int) -> int:
        """Index of the complex-conjugate character."""
        inv = self.power_maps[-1]
        row = self.characters[i]
        target = tuple(row[inv[k]].c for k in range(self.num_classes))
        return self._row_lookup()[target]

    def _row_lookup(self) -> dict:
        return {tuple(v.c for v in row): i for i, row in enumerate(self.characters)}

    def inner_product(self, f, g) -> Fraction:
        """Class-weighted Hermitian product of two class functions."""
        total = Cyclotomic.rational(self.exponent, 0)
        for k, size in enumerate(self.class_sizes):
            total = total + _cyc(f[k], self.exponent) * _cyc(g[k], self.exponent).conjugate() * size
        return (total / self.order).to_rational()

    def values_complex(self) -> list[list[complex]]:
        return [[complex(v) for v in row] for row in self.characters]


def _cyc(x, e: int) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.rational(e, x)


def dixon_prime(order: int, exponent: int) -> int:
    """Least prime p = 1 (mod exponent) with p > 2 sqrt(order)."""
    p = exponent + 1
    bound = 2 * isqrt(order) + 2
    while p <= bound or not modp.is_prime(p):
        p += exponent
    return p


def _class_coefficient_matrices(G: FiniteMatrixGroup, classes, cls_of) -> list[list[list[int]]]:
    r = len(classes)
    # c[j][i][k] = #{(x, y) in C_i x C_j : x y = z_k}
    c = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k, cls in enumerate(classes):
        z = cls[0]
        for x in range(G.order):
            y = G.mul(G.inverse(x), z)
            c[cls_of[y]][cls_of[x]][k] += 1
    return c


def _split_spaces(mats, p: int, r: int) -> list[list[int]]:
    """Common eigenvectors (one per 1-dim space) of commuting matrices."""
    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]  # rows = basis vectors
    for A in mats:
        if all(len(S) == 1 for S in spaces):
            break
        new = []
        for S in spaces:
            if len(S) == 1:
                new.append(S)
                continue
            B, piv = modp.rref_mod(S, p)
            d = len(B)
            # restricted matrix R with A b_i = sum_l R[l][i] b_l
            AB = [[sum(A[a][b] * v[b] for b in range(r)) % p for a in range(r)] for v in B]
            R = [[AB[i][piv[l]] for i in range(d)] for l in range(d)]
            poly = modp.charpoly_mod(R, p)
            roots = modp.roots_mod(poly, p)
            got = 0
            for lam in roots:
                M = [[(R[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
                ns = modp.nullspace_mod(M, p, d)
                vecs = [[sum(y[i] * B[i][t] for i in range(d)) % p for t in range(r)] for y in ns]
                got += len(vecs)
                new.append(vecs)
            if got != d:
                raise ArithmeticError("class matrix not diagonalizable mod p")
        spaces = new
    if any(len(S) != 1 for S in spaces):
        raise ArithmeticError("class matrices do not separate the characters")
    return [S[0] for S in spaces]


def character_table(G: FiniteMatrixGroup, cap: int = DEFAULT_ORDER_CAP) -> CharacterTable:
    """Full exact character table with indicators and Galois orbits."""
    if G.order > cap:
        raise CapExceeded("group order for character table", cap)
    classes = conjugacy_classes(G)
    cls_of = class_of(G)
    r = len(classes)
    sizes = [len(c) for c in classes]
    reps = [c[0] for c in classes]
    e = G.exponent
    n = G.order
    p = dixon_prime(n, e)
    coeff = _class_coefficient_matrices(G, classes, cls_of)
    vectors = _split_spaces(coeff, p, r)

    inv_class = [cls_of[G.inverse(z)] for z in reps]
    z_e = modp.primitive_root_of_unity(e, p)
    orders = [G.element_order(z) for z in reps]
    # class of g^l for each representative and l < order
    pow_classes = []
    for k, z in enumerate(reps):
        seq, x = [], 0
        for _ in range(orders[k]):
            seq.append(cls_of[x])
            x = G.mul(x, z)
        pow_classes.append(seq)

    rows = []
    for w in vectors:
        inv0 = pow(w[0], -1, p)
        omega = [(x * inv0) % p for x in w]
        s = sum(omega[k] * omega[inv_class[k]] * pow(sizes[k], -1, p) for k in range(r)) % p
        deg2 = n * pow(s, -1, p) % p
        d = modp.sqrt_mod_small(deg2, p, isqrt(n))
        if d is None:
            raise ArithmeticError("degree square root not found")
        chi_p = [omega[k] * d * pow(sizes[k], -1, p) % p for k in range(r)]
        values = []
        for k in range(r):
            o = orders[k]
            z_o = pow(z_e, e // o, p)
            inv_o = pow(o, -1, p)
            counts = {}
            for s_ in range(o):
                zs = pow(z_o, (-s_) % o, p)
                m = sum(chi_p[pow_classes[k][l]] * pow(zs, l, p) for l in range(o)) * inv_o % p
                if m > d:
                    raise ArithmeticError("eigenvalue multiplicity out of range")
                if m:
                    counts[s_ * (e // o)] = m
            values.append(Cyclotomic.from_exponent_counts(e, counts))
        rows.append(values)

    rows.sort(key=lambda row: (int(row[0].to_rational()),
                               tuple(-float(complex(v).real) for v in row),
                               tuple(-float(complex(v).imag) for v in row)))
    # trivial character first
    triv = next(i for i, row in enumerate(rows) if all(v == 1 for v in row))
    rows.insert(0, rows.pop(triv))

    power_maps = {}
    for s_ in list(range(max(e, 2) + 1)) + [-1]:
        power_maps[s_] = [cls_of[G.power(z, s_ % G.element_order(z))] for z in reps]

    table = CharacterTable(G, classes, sizes, reps, e, rows, [], [], power_maps)
    table.indicators = [_indicator(table, i) for i in range(r)]
    table.orbits = _galois_orbits(table)
    _verify(table)
    return table


def _indicator(table: CharacterTable, i: int) -> int:
    sq = table.power_maps[2]
    total = Cyclotomic.rational(table.exponent, 0)
    for k, size in enumerate(table.class_sizes):
        total = total + table.characters[i][sq[k]] * size
    v = (total / table.order).to_rational()
    if v not in (1, 0, -1):
        raise ArithmeticError(f"invalid Frobenius-Schur indicator {v}")
    return int(v)


def _galois_orbits(table: CharacterTable) -> list[list[int]]:
    e = table.exponent
    lookup = table._row_lookup()
    r = table.num_classes
    seen = set()
    orbits = []
    for i in range(len(table.characters)):
        if i in seen:
            continue
        orbit = set()
        for s_ in range(1, e + 1):
            if gcd(s_, e) != 1:
                continue
            pm = table.power_maps[s_]
            row = table.characters[i]
            key = tuple(row[pm[k]].c for k in range(r))
            orbit.add(lookup[key])
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def _verify(table: CharacterTable) -> None:
    n = table.order
    chars = table.characters
    if sum(table.degree(i) ** 2 for i in range(len(chars))) != n:
        raise ArithmeticError("sum of squared degrees differs from |G|")
    for i in range(len(chars)):
        for j in range(i, len(chars)):
            ip = table.inner_product(chars[i], chars[j])
            if ip != (1 if i == j else 0):
                raise ArithmeticError(f"row orthogonality fails for ({i}, {j})")
