"""Seeded random matrices for property checks and benchmarks."""

import itertools
from .fields import PrimeField
from .matrices import AbstractMatrix


def random_scalar(F, rng):
    if isinstance(F, PrimeField):
        return rng.randrange(F.p)
    return F.from_ratio(rng.randint(-9, 9), rng.randint(1, 5))


def random_unitriangular(F, n, rng):
    def entry(i, j):
        if i == j:
            return F.one
        return random_scalar(F, rng) if i > j else F.zero
    return AbstractMatrix.from_function(F, n, entry)


def random_matrix(F, n, rng, rank=None):
    """Uniform-ish random square matrix; with ``rank`` set, a product of
    an n x rank and a rank x n factor (rank at most ``rank``)."""
    if rank is None:
        return AbstractMatrix.from_function(F, n, lambda i, j: random_scalar(F, rng))
    if rank == 0:
        return AbstractMatrix.zeros(F, n)
    left = [[random_scalar(F, rng) for _ in range(rank)] for _ in range(n)]
    right = [[random_scalar(F, rng) for _ in range(n)] for _ in range(rank)]
    cols = list(zip(*right))
    return AbstractMatrix.from_rows(F, [[F.dot(row, col) for col in cols] for row in left])


def all_unitriangular(F, n):
    """Every lower-unitriangular n x n matrix over a prime field."""
    below = [(i, j) for i in range(n) for j in range(i)]
    for values in itertools.product(range(F.p), repeat=len(below)):
        fill = dict(zip(below, values))
        yield AbstractMatrix.from_function(
            F, n, lambda i, j: F.one if i == j else fill.get((i, j), F.zero))
