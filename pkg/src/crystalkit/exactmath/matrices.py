"""Dense exact matrices as nested lists of ``int`` or ``Fraction``.

Matrices are plain ``list[list[...]]`` in row-major order; vectors are
flat lists.  Functions never mutate their arguments.  Hashable snapshots
are produced with :func:`freeze`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]
Matrix = list  # list[list[Scalar]]
Vector = list  # list[Scalar]
FrozenMatrix = tuple  # tuple[tuple[int, ...], ...]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def copy(A: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(row) for row in A]


def freeze(A: Sequence[Sequence[Scalar]]) -> FrozenMatrix:
    return tuple(tuple(row) for row in A)


def shape(A: Sequence[Sequence[Scalar]]) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def transpose(A: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[Scalar]], B: Sequence[Sequence[Scalar]]) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Vector:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def vecmat(v: Sequence[Scalar], A: Sequence[Sequence[Scalar]]) -> Vector:
    return [sum(x * a for x, a in zip(v, col)) for col in zip(*A)]


def add(A, B) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(c: Scalar, A) -> Matrix:
    return [[c * a for a in row] for row in A]


def vadd(u, v) -> Vector:
    return [a + b for a, b in zip(u, v)]


def vsub(u, v) -> Vector:
    return [a - b for a, b in zip(u, v)]


def vscale(c: Scalar, v) -> Vector:
    return [c * a for a in v]


def dot(u, v) -> Scalar:
    return sum(a * b for a, b in zip(u, v))


def block_diag(*blocks: Sequence[Sequence[Scalar]]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out


def is_identity(A) -> bool:
    return all(x == (1 if i == j else 0) for i, row in enumerate(A) for j, x in enumerate(row))


def is_zero(A) -> bool:
    return all(x == 0 for row in A for x in row)


def to_fractions(A) -> Matrix:
    return [[Fraction(x) for x in row] for row in A]


def to_ints(A) -> Matrix:
    """Convert a rational matrix with integral entries to ``int`` entries."""
    out = []
    for row in A:
        r = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            r.append(x.numerator)
        out.append(r)
    return out


def is_integral(A) -> bool:
    return all(Fraction(x).denominator == 1 for row in A for x in row)


def frac_mod1(x: Scalar) -> Fraction:
    """Representative of ``x`` modulo 1 in ``[0, 1)``."""
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def vec_mod1(v: Iterable[Scalar]) -> tuple:
    return tuple(frac_mod1(x) for x in v)


def det(A) -> Fraction | int:
    """Exact determinant.  Bareiss elimination for integer input."""
    n = len(A)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in A for x in row):
        return _bareiss(A)
    M = to_fractions(A)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] * inv
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return d


def _bareiss(A) -> int:
    M = copy(A)
    n = len(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rref(A) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    M = to_fractions(A)
    rows, cols = shape(M)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : A x = 0}`` over Q (list of vectors)."""
    if not A:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(A)
    n = len(A[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(A, b) -> Vector | None:
    """One rational solution of ``A x = b`` or ``None``."""
    rows, cols = len(A), (len(A[0]) if A else 0)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = R[i][cols]
    return x


def inverse(A) -> Matrix:
    n = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def int_inverse(A) -> Matrix:
    """Inverse of a unimodular integer matrix, with ``int`` entries."""
    return to_ints(inverse(A))


def matpow(A, k: int) -> Matrix:
    n = len(A)
    result = identity(n)
    base = copy(A)
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def conjugate(U, A, Uinv=None) -> Matrix:
    """``U A U^{-1}``."""
    if Uinv is None:
        Uinv = inverse(U)
    return matmul(matmul(U, A), Uinv)


def hstack(*mats) -> Matrix:
    return [sum((list(m[i]) for m in mats), []) for i in range(len(mats[0]))]


def vstack(*mats) -> Matrix:
    out = []
    for m in mats:
        out.extend(list(r) for r in m)
    return out


def compound(A, k: int) -> Matrix:
    """k-th compound matrix: the action of ``A`` on the k-th exterior power.

    Rows and columns are indexed by the sorted k-subsets of range(n) in
    lexicographic order (see :func:`subsets`).
    """
    n = len(A)
    idx = subsets(n, k)
    if k == 0:
        return [[1]]
    return [[det([[A[i][j] for j in J] for i in I]) for J in idx] for I in idx]


def subsets(n: int, k: int) -> list[tuple[int, ...]]:
    from itertools import combinations
    return list(combinations(range(n), k))
