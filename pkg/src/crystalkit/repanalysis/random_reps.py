"""Seeded random integral representations for cross-validation.

Each small group comes with a few integral constituents, given as the
images of a fixed list of abstract generators.  A random representation
is a direct sum of constituents conjugated by a random unimodular matrix.
"""

from __future__ import annotations

import random

from crystalkit.exactmath import matrices as mx
from crystalkit.repanalysis.algebra import IntegralRep, integral_rep

ROT4 = [[0, -1], [1, 0]]
C3 = [[0, -1], [1, -1]]
C6 = [[0, -1], [1, 1]]
SWAP = [[0, 1], [1, 0]]
Q8_I = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
Q8_J = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
C5 = [[0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 0, -1], [0, 0, 1, -1]]
PERM3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
PERM4 = [[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]


def _chars(*signs):
    return [[[s]] for s in signs]


# group name -> list of constituents, each a list of generator images
CONSTITUENTS: dict[str, list[list]] = {
    "Z2": [_chars(1), _chars(-1), [SWAP]],
    "Z3": [_chars(1), [C3], [PERM3]],
    "Z4": [_chars(1), _chars(-1), [ROT4], [PERM4]],
    "Z5": [_chars(1), [C5]],
    "Z6": [_chars(1), _chars(-1), [C3], [C6]],
    "Z2xZ2": [_chars(1, 1), _chars(-1, 1), _chars(1, -1), _chars(-1, -1), [SWAP, mx.scale(-1, mx.identity(2))]],
    "S3": [_chars(1, 1), _chars(-1, 1), [[[0, 1], [1, 0]], C3]],
    "D4": [_chars(1, 1), _chars(-1, 1), _chars(1, -1), _chars(-1, -1), [ROT4, [[1, 0], [0, -1]]]],
    "Q8": [_chars(1, 1), _chars(-1, 1), _chars(1, -1), _chars(-1, -1), [Q8_I, Q8_J]],
}


def direct_sum(parts: list[list]) -> list:
    """Generator images of the direct sum of constituents."""
    k = len(parts[0])
    return [mx.block_diag(*[p[i] for p in parts]) for i in range(k)]


def random_unimodular(n: int, rng: random.Random, steps: int = 10) -> list:
    U = mx.identity(n)
    for _ in range(steps):
        if n == 1:
            U = mx.scale(-1, U)
            continue
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    return U


def random_rep(rng: random.Random, max_degree: int = 6) -> tuple[str, IntegralRep]:
    """A random representation of one of the catalog groups, degree <= max_degree."""
    name = rng.choice(sorted(CONSTITUENTS))
    cons = CONSTITUENTS[name]
    parts = []
    deg = 0
    while True:
        choices = [c for c in cons if deg + len(c[0]) <= max_degree]
        if not choices or (parts and rng.random() < 0.35):
            break
        c = rng.choice(choices)
        parts.append(c)
        deg += len(c[0])
    gens = direct_sum(parts)
    U = random_unimodular(deg, rng)
    Ui = mx.int_inverse(U)
    gens = [mx.matmul(mx.matmul(U, g), Ui) for g in gens]
    return name, integral_rep(gens, degree=deg)
