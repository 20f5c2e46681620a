"""Test corpora: every binary matroid on a small ground set, plus random generators."""
from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

import numpy as np

from . import _bits
from .linalg import RealizationMatrix
from .matroid import Matroid, from_matrix, rank3_from_lines, uniform
from .ecodim import SubsetFamily

SQUARE_LINES = ((1, 2, 3), (3, 4, 5), (5, 6, 7), (7, 8, 1))
PAPPUS_LINES = (
    (1, 2, 3), (4, 5, 6), (7, 8, 9), (1, 5, 7), (1, 6, 8),
    (2, 4, 7), (2, 6, 9), (3, 4, 8), (3, 5, 9),
)

# published codimensions of the matroid varieties; stored, never computed
REPORTED_CODIM = {"square": 4, "pappus": 8}


def square_matroid() -> Matroid:
    return rank3_from_lines(8, SQUARE_LINES)


def pappus_matroid() -> Matroid:
    return rank3_from_lines(9, PAPPUS_LINES)


def named_matroids() -> dict[str, Matroid]:
    return {"square": square_matroid(), "pappus": pappus_matroid()}


def _rref_matrices(k: int, n: int) -> Iterator[list[list[int]]]:
    for pivots in combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for bits in product((0, 1), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), v in zip(free, bits):
                rows[r][c] = v
            yield rows


def binary_matroids(n: int) -> Iterator[Matroid]:
    """Every labelled GF(2)-representable matroid on ``[n]``, each exactly once.

    A binary matroid determines its representation up to row operations, so
    the row spaces (one reduced echelon matrix each) are in bijection with the
    matroids; rank 0 gives the all-loops matroid.
    """
    yield uniform(0, n)
    for k in range(1, n + 1):
        for rows in _rref_matrices(k, n):
            yield from_matrix(RealizationMatrix(tuple(map(tuple, rows)), p=2))


def random_matroid(n: int, rng: np.random.Generator, p: int = 2, max_rank: int | None = None) -> Matroid:
    """Column matroid of a random matrix over GF(p) (rank may be deficient)."""
    k = int(rng.integers(1, (max_rank or n) + 1))
    rows = rng.integers(0, p, size=(k, n))
    return from_matrix(RealizationMatrix(tuple(map(tuple, rows.tolist())), p=p))


def random_connected_matroid(n: int, rng: np.random.Generator, p: int = 2, tries: int = 1000) -> Matroid:
    for _ in range(tries):
        M = random_matroid(n, rng, p)
        if M.is_connected():
            return M
    raise RuntimeError("no connected matroid found")


def random_family(n: int, rng: np.random.Generator, density: float = 0.5) -> SubsetFamily:
    """Random family always containing the empty set and the ground set."""
    keep = rng.random(1 << n) < density
    keep[0] = keep[-1] = True
    return SubsetFamily(int(m) for m in np.nonzero(keep)[0])
