"""H^1 and H^2 of a finite matrix group with coefficients in its lattice.

Both come from the normalized inhomogeneous bar complex.  Write D1 for
the coboundary C^1 -> C^2 on normalized cochains.  Over Q the complex is
exact in positive degrees, so

* H^1(H, Z^n) = ker_Z(D1) / D0(Z^n), and
* H^2(H, Z^n) = H^1(H, (Q/Z)^n) = {a : D1 a in Z} / (ker_Q(D1) + Z),

which the Smith form ``U D1 V = diag(d_1, ..., d_r, 0, ...)`` reads off as
the sum of Z/d_i.  Vector systems are exactly the rational cochains with
integral coboundary, so a class in H^2 is represented by a vector system
and its coordinates are ``d_i (V^{-1} a)_i mod d_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from crystalkit.errors import CapExceeded
from crystalkit.exactmath import matrices as mx
from crystalkit.exactmath.normal_forms import smith_normal_form
from crystalkit.groups import FiniteMatrixGroup, close_group

COHOMOLOGY_ORDER_CAP = 64


@dataclass
class CohomologyResult:
    degree: int
    divisors: list[int]              # invariant factors > 1; [] means the zero group
    representatives: list = field(default_factory=list)

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def is_zero(self) -> bool:
        return not self.divisors


def module_action(H: FiniteMatrixGroup, module=None) -> list:
    """Matrices of the coefficient module per element index.

    ``module`` is None (H acts through its own matrices) or a list with
    one integer matrix per element of H, which lets a faithful matrix
    group act non-faithfully, e.g. trivially.
    """
    if module is None:
        return list(H.elements)
    if len(module) != H.order:
        raise ValueError("module needs one matrix per group element")
    return [mx.freeze(M) for M in module]


def _coboundary_matrix(H: FiniteMatrixGroup, act) -> list:
    """D1 on normalized cochains: rows (g, h, coord), columns (g, coord); g, h != 1."""
    n, N = len(act[0]), H.order
    m = N - 1
    cols = m * n
    rows = []
    for g in range(1, N):
        G = act[g]
        for h in range(1, N):
            gh = H.mul(g, h)
            for i in range(n):
                row = [0] * cols
                # (D1 a)(g, h)_i = (g a(h))_i - a(gh)_i + a(g)_i
                for k in range(n):
                    row[(h - 1) * n + k] += G[i][k]
                if gh != 0:
                    row[(gh - 1) * n + i] -= 1
                row[(g - 1) * n + i] += 1
                rows.append(row)
    return rows


@dataclass
class _BarData:
    group: FiniteMatrixGroup
    U: list
    V: list
    Vinv: list
    diag: list
    rank: int


_CACHE: dict = {}


def bar_data(H: FiniteMatrixGroup, cap: int = COHOMOLOGY_ORDER_CAP, module=None) -> _BarData:
    if H.order > cap:
        raise CapExceeded("holonomy order for bar-complex cohomology", cap)
    act = module_action(H, module)
    key = (tuple(H.elements), tuple(act))
    data = _CACHE.get(key)
    if data is None:
        if H.order == 1:
            data = _BarData(H, [], [], [], [], 0)
        else:
            S = smith_normal_form(_coboundary_matrix(H, act))
            data = _BarData(H, S.U, S.V, S.Vinv, S.diagonal, S.rank)
        _CACHE[key] = data
    return data


def _flatten_system(H: FiniteMatrixGroup, vectors) -> list:
    return [Fraction(x) for g in range(1, H.order) for x in vectors[g]]


def _unflatten(H: FiniteMatrixGroup, flat, n: int) -> list:
    zero = tuple(Fraction(0) for _ in range(n))
    out = [zero]
    for g in range(1, H.order):
        out.append(tuple(mx.frac_mod1(x) for x in flat[(g - 1) * n:g * n]))
    return out


def h2(H: FiniteMatrixGroup, cap: int = COHOMOLOGY_ORDER_CAP, module=None) -> CohomologyResult:
    n = len(module_action(H, module)[0])
    data = bar_data(H, cap, module)
    divs = [d for d in data.diag[:data.rank] if d > 1]
    reps = []
    for i, d in enumerate(data.diag[:data.rank]):
        if d > 1:
            y = [Fraction(0)] * len(data.V)
            y[i] = Fraction(1, d)
            reps.append(_unflatten(H, mx.matvec(data.V, y), n))
    return CohomologyResult(2, divs, reps)


def h1(H: FiniteMatrixGroup, cap: int = COHOMOLOGY_ORDER_CAP, module=None) -> CohomologyResult:
    act = module_action(H, module)
    n = len(act[0])
    if H.order == 1:
        return CohomologyResult(1, [])
    data = bar_data(H, cap, module)
    r = data.rank
    # kernel coordinates of the coboundaries of the basis vectors e_j
    coords = []
    for j in range(n):
        b = []
        for g in range(1, H.order):
            G = act[g]
            b.extend(G[i][j] - int(i == j) for i in range(n))
        coords.append(mx.matvec(data.Vinv, b)[r:])
    if not coords[0]:
        return CohomologyResult(1, [])
    M = mx.transpose(coords)   # rows: kernel coordinates, columns: e_j
    S = smith_normal_form(M)
    if S.rank != len(M):
        raise ArithmeticError("H^1 with lattice coefficients must be finite")
    divs = [d for d in S.divisors if d > 1]
    # representative cocycles: kernel basis vectors hit by U^{-1} e_i for d_i > 1
    reps = []
    Uinv = mx.int_inverse(S.U)
    kernel_cols = [[data.V[row][c] for row in range(len(data.V))] for c in range(r, len(data.V))]
    for i, d in enumerate(S.diagonal):
        if d > 1:
            comb = [Uinv[k][i] for k in range(len(Uinv))]
            flat = [sum(c * col[t] for c, col in zip(comb, kernel_cols)) for t in range(len(kernel_cols[0]))]
            reps.append([tuple([0] * n)] + [tuple(flat[(g - 1) * n:g * n]) for g in range(1, H.order)])
    return CohomologyResult(1, divs, reps)


def cohomology(H: FiniteMatrixGroup, k: int, cap: int = COHOMOLOGY_ORDER_CAP, module=None) -> CohomologyResult:
    if k == 1:
        return h1(H, cap, module)
    if k == 2:
        return h2(H, cap, module)
    raise ValueError("only degrees 1 and 2 are supported")


def class_coordinates(H: FiniteMatrixGroup, vectors, cap: int = COHOMOLOGY_ORDER_CAP) -> tuple[int, ...]:
    """Coordinates of a vector system in the decomposition of H^2 into cyclic groups."""
    if H.order == 1:
        return ()
    data = bar_data(H, cap)
    y = mx.matvec(data.Vinv, _flatten_system(H, vectors))
    out = []
    for i, d in enumerate(data.diag[:data.rank]):
        if d > 1:
            c = y[i] * d
            if c.denominator != 1:
                raise ArithmeticError("not a vector system: coboundary is not integral")
            out.append(int(c) % d)
    return tuple(out)


def system_from_coordinates(H: FiniteMatrixGroup, coords, cap: int = COHOMOLOGY_ORDER_CAP) -> list:
    """A vector system representing the class with the given coordinates."""
    data = bar_data(H, cap)
    y = [Fraction(0)] * len(data.V)
    it = iter(coords)
    for i, d in enumerate(data.diag[:data.rank]):
        if d > 1:
            y[i] = Fraction(next(it), d)
    if H.order == 1:
        return [tuple(Fraction(0) for _ in range(H.degree))]
    return _unflatten(H, mx.matvec(data.V, y), H.degree)


def all_classes(H: FiniteMatrixGroup, cap: int = COHOMOLOGY_ORDER_CAP, class_cap: int = 4096):
    """Every coordinate tuple of H^2(H, Z^n)."""
    divs = h2(H, cap).divisors
    total = 1
    for d in divs:
        total *= d
    if total > class_cap:
        raise CapExceeded("number of cohomology classes", class_cap)
    return list(product(*[range(d) for d in divs]))


def restriction(H: FiniteMatrixGroup, vectors, subgroup: list[int], cap: int = COHOMOLOGY_ORDER_CAP):
    """Restrict a vector system to the subgroup with the given element indices.

    Returns (P, coordinates of the restricted class in H^2(P, Z^n)).
    """
    gens = [H.elements[i] for i in subgroup if i != 0]
    P = close_group(gens, degree=H.degree) if gens else close_group([], degree=H.degree)
    sub_vectors = [vectors[H.index[e]] for e in P.elements]
    return P, class_coordinates(P, sub_vectors, cap)
