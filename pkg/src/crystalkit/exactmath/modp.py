"""Dense linear algebra over a prime field F_p (used by Dixon's method)."""

from __future__ import annotations


def rref_mod(A, p: int) -> tuple[list[list[int]], list[int]]:
    M = [[x % p for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def nullspace_mod(A, p: int, ncols: int) -> list[list[int]]:
    """Basis (as row vectors) of ``{x : A x = 0}`` over F_p."""
    if not A:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref_mod(A, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-R[i][f]) % p
        basis.append(v)
    return basis


def matmul_mod(A, B, p: int):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) % p for col in Bt] for row in A]


def charpoly_mod(A, p: int) -> list[int]:
    """Coefficients (lowest first) of ``det(x I - A)`` over F_p."""
    n = len(A)
    H = [[x % p for x in row] for row in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(H[m][m - 1], -1, p)
        for i in range(m + 1, n):
            f = H[i][m - 1] * inv % p
            if f:
                H[i] = [(a - f * b) % p for a, b in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + f * row[i]) % p
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        pk = [0] * (k + 1)
        for i, c in enumerate(prev):
            pk[i + 1] = (pk[i + 1] + c) % p
            pk[i] = (pk[i] - H[k - 1][k - 1] * c) % p
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            if not prod:
                break
            c0 = prod * H[i - 1][k - 1] % p
            for j, c in enumerate(polys[i - 1]):
                pk[j] = (pk[j] - c0 * c) % p
        polys.append(pk)
    return polys[n]


def roots_mod(coeffs: list[int], p: int) -> list[int]:
    """All roots in F_p of a polynomial (exhaustive evaluation)."""
    roots = []
    rev = list(reversed(coeffs))
    for x in range(p):
        acc = 0
        for c in rev:
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def sqrt_mod_small(a: int, p: int, bound: int) -> int | None:
    """Smallest ``d`` in ``[1, bound]`` with ``d^2 = a`` mod p."""
    a %= p
    for d in range(1, bound + 1):
        if d * d % p == a:
            return d
    return None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def primitive_root_of_unity(e: int, p: int) -> int:
    """An element of exact order ``e`` in F_p^* (requires e | p - 1)."""
    if (p - 1) % e:
        raise ValueError("e must divide p - 1")
    factors = _prime_factors(e)
    for g in range(2, p):
        z = pow(g, (p - 1) // e, p)
        if all(pow(z, e // q, p) != 1 for q in factors):
            return z
    if e == 1:
        return 1
    raise ValueError("no primitive root found")


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
