"""Smith and Hermite normal forms over Z, and integer linear systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from crystalkit.errors import NoSolution
from crystalkit.exactmath import matrices as mx


@dataclass(frozen=True)
class SmithResult:
    """``U A V = D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    ``U`` is ``None`` when left transforms were not requested.  ``Vinv``
    is the inverse of ``V``, kept because cohomology coordinates need it.
    """

    U: list | None
    D: list
    V: list | None
    Vinv: list | None = None

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def divisors(self) -> list[int]:
        """Nonzero diagonal entries (the elementary divisors)."""
        return [d for d in self.diagonal if d != 0]


@dataclass(frozen=True)
class HermiteResult:
    """Row-style Hermite form ``H = U A``."""

    H: list
    U: list | None
    pivots: list[int] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def smith_normal_form(A, transforms: str = "both") -> SmithResult:
    """Smith normal form with optional transforms.

    ``transforms`` is one of ``"both"``, ``"right"`` or ``"none"``.  The
    divisibility chain ``d1 | d2 | ...`` holds and every ``d_i >= 0``.
    """
    m, n = mx.shape(A)
    D = [[int(x) for x in row] for row in A]
    want_left = transforms == "both"
    want_right = transforms in ("both", "right")
    U = mx.identity(m) if want_left else None
    V = mx.identity(n) if want_right else None
    Vi = mx.identity(n) if want_right else None

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = D[src], D[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            # V^{-1} picks up the inverse row operation
            vs, vd = Vi[src], Vi[dst]
            for k in range(n):
                if vd[k]:
                    vs[k] -= q * vd[k]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = D[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if not done:
                continue
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
    return SmithResult(U, D, V, Vi)


def elementary_divisors(A) -> list[int]:
    """Nonzero Smith divisors of ``A`` (no transforms computed)."""
    if not A or not A[0]:
        return []
    H = hermite_normal_form(A, transform=False).H
    if not H:
        return []
    return smith_normal_form(H, transforms="none").divisors


def hermite_normal_form(A, transform: bool = True) -> HermiteResult:
    """Row Hermite form: ``H = U A`` in row echelon form.

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.
    Zero rows are dropped from ``H`` (and the matching rows of ``U`` are
    kept at the bottom so that ``U`` stays square and unimodular).
    """
    m, n = mx.shape(A)
    H = [[int(x) for x in row] for row in A]
    U = mx.identity(m) if transform else None
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        # gcd-combine rows r..m-1 into row r at column c
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            Hr, Hi = H[r], H[i]
            H[r] = [x * u + y * v for u, v in zip(Hr, Hi)]
            H[i] = [-bg * u + ag * v for u, v in zip(Hr, Hi)]
            if U is not None:
                Ur, Ui = U[r], U[i]
                U[r] = [x * u + y * v for u, v in zip(Ur, Ui)]
                U[i] = [-bg * u + ag * v for u, v in zip(Ur, Ui)]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            if U is not None:
                U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [u - q * v for u, v in zip(H[i], H[r])]
                if U is not None:
                    U[i] = [u - q * v for u, v in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return HermiteResult(H[:r], U, pivots)


def canonical_forms(A, kind: str = "smith"):
    """Dispatch to :func:`smith_normal_form` or :func:`hermite_normal_form`."""
    if kind == "smith":
        return smith_normal_form(A)
    if kind == "hermite":
        return hermite_normal_form(A)
    raise ValueError(f"unknown normal form {kind!r}")


# ---------------------------------------------------------------------------
# integer linear algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerSolution:
    """``particular`` solves ``A x = b``; ``kernel`` is a Z-basis of ker A."""

    particular: list[int]
    kernel: list[list[int]]


def solve_integer_linear(A, b) -> IntegerSolution:
    """Solve ``A x = b`` over Z, raising :class:`NoSolution` if impossible."""
    m = len(A)
    n = len(A[0]) if m else 0
    if len(b) != m:
        raise ValueError("dimension mismatch")
    S = smith_normal_form(A)
    c = mx.matvec(S.U, b) if m else []
    y = [0] * n
    diag = S.diagonal
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                raise NoSolution("right-hand side outside the column space")
        else:
            q, rem = divmod(c[i], d)
            if rem:
                raise NoSolution("right-hand side outside the image lattice")
            y[i] = q
    x = mx.matvec(S.V, y) if n else []
    r = S.rank
    kernel = [[S.V[i][j] for i in range(n)] for j in range(r, n)]
    return IntegerSolution([int(v) for v in x], kernel)


def integer_kernel(A, ncols: int | None = None) -> list[list[int]]:
    """Z-basis of ``{x in Z^n : A x = 0}``."""
    if not A:
        n = ncols or 0
        return mx.identity(n)
    S = smith_normal_form(A, transforms="right")
    n = len(A[0])
    return [[S.V[i][j] for i in range(n)] for j in range(S.rank, n)]


def lattice_basis(vectors, dim: int) -> list[list[int]]:
    """Hermite basis (rows) of the Z-span of integer vectors."""
    if not vectors:
        return []
    return hermite_normal_form(vectors, transform=False).H


def rational_lattice_basis(vectors, dim: int) -> list[list[Fraction]]:
    """Hermite-style basis of the Z-span of rational vectors."""
    if not vectors:
        return []
    den = 1
    for v in vectors:
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in v] for v in vectors]
    H = hermite_normal_form(ints, transform=False).H
    return [[Fraction(x, den) for x in row] for row in H]


def saturate(vectors, dim: int) -> list[list[int]]:
    """Basis of ``span_Q(vectors) ∩ Z^dim``."""
    if not vectors:
        return []
    # the saturation is the integer kernel of an integral basis of the
    # orthogonal complement
    comp = mx.nullspace(vectors, dim)
    if not comp:
        return mx.identity(dim)
    rows = []
    for v in comp:
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in v])
    K = integer_kernel(rows, dim)
    return lattice_basis(K, dim)


def is_unimodular(A) -> bool:
    return len(A) == len(A[0]) and abs(mx.det(A)) == 1
