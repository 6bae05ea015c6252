"""Seeded random systems for property tests and batch checks."""

import random

from .finalg import MultiMatrixAlgebra, StarEndomorphism
from .matrix import CMatrix
from .pdsys import PartialMap
from .scalar import Scalar

__all__ = [
    "random_partial_map",
    "random_unitary",
    "random_multimatrix_system",
    "random_element",
    "seeded",
]

_TRIPLES = ((3, 4, 5), (5, 12, 13), (8, 15, 17))
_PHASES = (Scalar(1), Scalar(-1), Scalar(0, 1), Scalar(0, -1), Scalar(3, 4) / 5, Scalar(5, -12) / 13)


def random_partial_map(rng, max_points=6, undefined=0.25):
    n = rng.randint(1, max_points)
    images = [None if rng.random() < undefined else rng.randrange(n) for _ in range(n)]
    return PartialMap.from_images(images)


def random_unitary(rng, n, steps=3):
    """Product of Pythagorean rotations, unimodular phases and a permutation."""
    u = CMatrix.identity(n)
    if n == 1:
        return CMatrix.from_rows([[rng.choice(_PHASES)]])
    for _ in range(steps):
        a, b = rng.sample(range(n), 2)
        x, y, h = rng.choice(_TRIPLES)
        c, s = Scalar(x, 0) / h, Scalar(y, 0) / h
        rows = [[Scalar(int(i == j)) for j in range(n)] for i in range(n)]
        rows[a][a], rows[a][b], rows[b][a], rows[b][b] = c, -s, s, c
        u = CMatrix.from_rows(rows) @ u
        phase = [[rng.choice(_PHASES) if i == j else Scalar(0) for j in range(n)] for i in range(n)]
        u = CMatrix.from_rows(phase) @ u
    perm = list(range(n))
    rng.shuffle(perm)
    p = CMatrix.from_real([[1 if perm[i] == j else 0 for j in range(n)] for i in range(n)])
    return p @ u


def random_multimatrix_system(rng, max_blocks=3, max_dim=3, conjugate=True, dims=None):
    """A random endomorphism of a random (or the given) multi-matrix algebra."""
    if dims is None:
        dims = tuple(rng.randint(1, max_dim) for _ in range(rng.randint(1, max_blocks)))
    A = MultiMatrixAlgebra(dims)
    mults = []
    for n in dims:
        room, chosen = n, []
        while True:
            fits = [i for i, d in enumerate(dims) if d <= room]
            if not fits or rng.random() < 0.3:
                break
            i = rng.choice(fits)
            chosen.append(i)
            room -= dims[i]
        mults.append(chosen)
    unitaries = [random_unitary(rng, n) if conjugate else None for n in dims]
    return A, StarEndomorphism(A, A, mults, unitaries=unitaries)


def random_element(rng, algebra, span=3, gaussian=True):
    blocks = []
    for n in algebra.block_dims:
        rows = [[Scalar(rng.randint(-span, span), rng.randint(-span, span) if gaussian else 0)
                 for _ in range(n)] for _ in range(n)]
        blocks.append(rows)
    return algebra.element(blocks)


def seeded(seed):
    return random.Random(seed)
