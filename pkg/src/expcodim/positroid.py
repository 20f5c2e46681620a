"""Positroids: cyclic rank matrices, bounded affine permutations, essential sets.

Conventions.  Rows ``i`` run over ``1..n`` and a row stores ``r(i, j)`` for
``i <= j <= i + n``, where ``r(i, j)`` is the rank of the cyclic interval
``[i, j]``; ``[i, i+n-1]`` and ``[i, i+n]`` are both the whole ground set.
Outside that strip ``r(i, j) = j - i + 1`` for ``j < i`` (so the empty
interval has rank 0 and ``r(i+1, i-1) = -1``) and ``r(i, j) = k`` once
``j - i >= n``.  A bounded affine permutation ``pi`` satisfies
``i <= pi(i) <= i + n`` and ``pi(i + n) = pi(i) + n``; its matrix has a 1 at
``(i, pi(i))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Mapping

import numpy as np

from . import _bits
from .ecodim import SubsetFamily
from .errors import InconsistentRanks, MalformedMatrix, MatroidError
from .matroid import Matroid, from_bases

MAX_PERM_N = 64


@dataclass(frozen=True)
class CyclicInterval:
    """The cyclic interval ``{i, i+1, ..., j}`` read mod ``n``; ``0 <= j - i <= n``."""

    i: int
    j: int

    def size(self, n: int) -> int:
        return min(self.j - self.i + 1, n)

    def mask(self, n: int) -> int:
        m = 0
        for e in range(self.i, self.i + self.size(n)):
            m |= 1 << ((e - 1) % n)
        return m

    def normalized(self, n: int) -> "CyclicInterval":
        i = (self.i - 1) % n + 1
        return CyclicInterval(i, self.j - self.i + i)


def all_intervals(n: int) -> list[CyclicInterval]:
    """Nonempty proper intervals ``[i, j]`` with ``0 <= j - i < n - 1``, then ``[1, n]``."""
    out = [CyclicInterval(i, i + w) for w in range(n - 1) for i in range(1, n + 1)]
    out.append(CyclicInterval(1, n))
    return out


def interval_family(n: int) -> SubsetFamily:
    """All cyclic intervals of ``[n]`` as a subset family (including ``[n]``)."""
    return SubsetFamily(I.mask(n) for I in all_intervals(n))


class CyclicRankMatrix:
    """Ranks ``r(i, j)`` of cyclic intervals on the strip ``i <= j <= i + n``."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries):
        arr = np.array(entries, dtype=np.int64)
        if n < 1 or arr.shape != (n, n + 1):
            raise ValueError(f"entries must have shape ({n}, {n + 1})")
        arr.setflags(write=False)
        self.n = n
        self.entries = arr

    @property
    def k(self) -> int:
        return int(self.entries[0, self.n - 1])

    def __call__(self, i: int, j: int) -> int:
        n = self.n
        w = j - i
        if w < 0:
            return w + 1
        if w > n:
            return self.k
        return int(self.entries[(i - 1) % n, w])

    def row(self, i: int) -> list[int]:
        """``[r(i, i), ..., r(i, i + n)]``."""
        return [int(x) for x in self.entries[(i - 1) % self.n]]

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicRankMatrix) and self.n == other.n and np.array_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"CyclicRankMatrix(n={self.n}, rows={self.entries.tolist()})"


@dataclass(frozen=True)
class AffinePermutation:
    """Bounded affine permutation given by its window ``pi(1), ..., pi(n)``."""

    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", w)
        n = len(w)
        if n < 1:
            raise ValueError("empty window")
        if n > MAX_PERM_N:
            raise ValueError(f"n = {n} exceeds {MAX_PERM_N}")
        for i, v in enumerate(w, start=1):
            if not i <= v <= i + n:
                raise ValueError(f"pi({i}) = {v} is outside [{i}, {i + n}]")
        if len({v % n for v in w}) != n:
            raise ValueError(f"window {w} does not permute the residues mod {n}")

    @property
    def n(self) -> int:
        return len(self.window)

    @property
    def k(self) -> int:
        """Rank of the positroid: the average excedance ``(sum pi(i) - i) / n``."""
        return sum(v - i for i, v in enumerate(self.window, start=1)) // self.n

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def inverse(self, j: int) -> int:
        n = self.n
        for i, v in enumerate(self.window, start=1):
            if (v - j) % n == 0:
                return i + (j - v)
        raise AssertionError("unreachable for a valid window")

    def __str__(self) -> str:
        return ",".join(map(str, self.window))


@dataclass(frozen=True)
class EssentialPosition:
    interval: CyclicInterval
    rank_bound: int


# -- matrices ---------------------------------------------------------------
def cyclic_rank_matrix(M: Matroid) -> CyclicRankMatrix:
    n = M.n
    rows = [[M.rank(CyclicInterval(i, i + w).mask(n)) for w in range(n + 1)] for i in range(1, n + 1)]
    return CyclicRankMatrix(n, rows)


def validate_rank_matrix(R: CyclicRankMatrix) -> bool:
    """Check the three local conditions characterising cyclic rank matrices."""
    n = R.n
    k = R(1, n)
    for i in range(1, n + 1):
        if R(i, i) not in (0, 1):
            return False
        if R(i, i + n - 1) != k or R(i, i + n) != k:
            return False
        for j in range(i, i + n + 1):
            rij = R(i, j)
            # rows are periodic, so r(i-1, j) is read from row i-1 mod n
            if j - (i - 1) <= n and R(i - 1, j) - rij not in (0, 1):
                return False
            if j + 1 - i <= n:
                if R(i, j + 1) - rij not in (0, 1):
                    return False
                if j + 1 - (i - 1) <= n and rij == R(i - 1, j) == R(i, j + 1) and R(i - 1, j + 1) != rij:
                    return False
    return True


def to_affine_permutation(R: CyclicRankMatrix) -> AffinePermutation:
    """Read off the 1s: ``r(i,j) = r(i,j-1) = r(i+1,j) != r(i+1,j-1)``."""
    if not validate_rank_matrix(R):
        raise MalformedMatrix("not a cyclic rank matrix")
    n = R.n
    window = []
    for i in range(1, n + 1):
        hits = [
            j
            for j in range(i, i + n + 1)
            if R(i, j) == R(i, j - 1) == R(i + 1, j) != R(i + 1, j - 1)
        ]
        if len(hits) != 1:
            raise MalformedMatrix(f"row {i} has {len(hits)} ones")
        window.append(hits[0])
    try:
        return AffinePermutation(tuple(window))
    except ValueError as exc:
        raise MalformedMatrix(str(exc)) from exc


def from_affine_permutation(p: AffinePermutation) -> CyclicRankMatrix:
    """``r(i, j) = #{m in [i, j] : pi(m) > j}``."""
    n = p.n
    rows = [
        [sum(1 for m in range(i, i + w + 1) if p(m) > i + w) for w in range(n + 1)]
        for i in range(1, n + 1)
    ]
    return CyclicRankMatrix(n, rows)


def permutation_matrix_entry(p: AffinePermutation, i: int, j: int) -> int:
    return int(p(i) == j)


def length(p: AffinePermutation) -> int:
    """Pairs of 1s arranged southwest-to-northeast, one per affine orbit.

    Counts ``(i, m)`` with ``i`` in ``[n]``, ``i < m`` and ``pi(m) < pi(i)``;
    boundedness forces ``m < i + n``.
    """
    n = p.n
    return sum(1 for i in range(1, n + 1) for m in range(i + 1, i + n) if p(m) < p(i))


def essential_set(p: AffinePermutation) -> list[EssentialPosition]:
    """Upper-right corners of the cells left after crossing out.

    On the board ``{(i, j) : i <= j <= i + n}`` every cell strictly left of a
    1 in its row, or strictly below a 1 in its column, is crossed out.  A
    surviving cell is essential when the cell above it and the cell to its
    right are crossed out or off the board.  Cells with ``j - i = n`` are
    never essential.
    """
    n = p.n
    R = from_affine_permutation(p)

    def alive(i: int, j: int) -> bool:
        if not 0 <= j - i <= n:
            return False
        return j >= p(i) and p.inverse(j) >= i

    out = []
    for i in range(1, n + 1):
        for j in range(i, i + n):
            if alive(i, j) and not alive(i - 1, j) and not alive(i, j + 1):
                out.append(EssentialPosition(CyclicInterval(i, j), R(i, j)))
    return out


# -- matroids from interval data ---------------------------------------------
def _as_interval(key) -> CyclicInterval:
    if isinstance(key, CyclicInterval):
        return key
    i, j = key
    return CyclicInterval(int(i), int(j))


def positroid_from_interval_ranks(n: int, ranks: Mapping, k: int | None = None) -> Matroid:
    """Freest matroid with ``rk I <= r(I)`` on the given cyclic intervals.

    Bases are the ``k``-sets ``B`` with ``#(B & I) <= r(I)`` for every given
    interval.  ``k`` defaults to the rank given for the whole ground set.
    The result must be a matroid that reproduces every supplied rank,
    otherwise :class:`InconsistentRanks` is raised.
    """
    cons = {}
    for key, val in ranks.items():
        I = _as_interval(key).normalized(n)
        if not 0 <= I.j - I.i <= n:
            raise ValueError(f"interval {I} is not in the strip 0 <= j - i <= n")
        cons[I] = int(val)
    full_ranks = {v for I, v in cons.items() if I.size(n) == n}
    if k is None:
        if len(full_ranks) != 1:
            raise InconsistentRanks("rank of the whole ground set is missing or ambiguous")
        k = full_ranks.pop()
    if not 0 <= k <= n:
        raise InconsistentRanks(f"rank {k} is impossible on {n} elements")
    masks = np.arange(1 << n, dtype=np.int64)
    ok = _bits.popcounts(n) == k
    for I, val in cons.items():
        ok &= np.bitwise_count(masks & I.mask(n)) <= val
    bases = np.nonzero(ok)[0]
    if bases.size == 0:
        raise InconsistentRanks("no k-subset satisfies the interval bounds")
    try:
        M = from_bases(n, (int(b) for b in bases))
    except MatroidError as exc:
        raise InconsistentRanks(f"interval bounds do not generate a matroid: {exc}") from exc
    for I, val in cons.items():
        if M.rank(I.mask(n)) != val:
            raise InconsistentRanks(f"generated matroid has rank {M.rank(I.mask(n))} on {I}, expected {val}")
    return M


def positroid(p: AffinePermutation) -> Matroid:
    """The positroid of a bounded affine permutation."""
    R = from_affine_permutation(p)
    n = p.n
    ranks = {CyclicInterval(i, i + w): R(i, i + w) for i in range(1, n + 1) for w in range(n)}
    return positroid_from_interval_ranks(n, ranks)


def is_positroid(M: Matroid) -> bool:
    """True when ``M`` equals the positroid generated by its own cyclic interval ranks."""
    if M.n == 0:
        return True
    R = cyclic_rank_matrix(M)
    ranks = {CyclicInterval(i, i + w): R(i, i + w) for i in range(1, M.n + 1) for w in range(M.n)}
    try:
        return positroid_from_interval_ranks(M.n, ranks) == M
    except InconsistentRanks:
        return False


def ec_positroid(p: AffinePermutation) -> int:
    """``ec`` over the cyclic-interval family read straight off the permutation.

    The coefficient of ``[i, j]`` (``j - i < n``) is the matrix entry at
    ``(i, j)``, so the sum runs over the 1s off the upper-right edge.
    """
    R = from_affine_permutation(p)
    k = R.k
    return sum(k - R(i, p(i)) for i in range(1, p.n + 1) if p(i) - i < p.n)


def interval_coefficients(p: AffinePermutation) -> dict[int, int]:
    """``a`` over the interval family predicted by the permutation matrix (``[n]`` excluded)."""
    n = p.n
    return {
        I.mask(n): permutation_matrix_entry(p, I.i, I.j)
        for I in all_intervals(n)
        if I.size(n) < n
    }


# -- enumeration ------------------------------------------------------------
def all_bounded_affine_permutations(n: int) -> Iterator[AffinePermutation]:
    """Every bounded affine permutation of period ``n``."""
    for w in permutations(range(n)):
        fixed = [i for i in range(n) if w[i] == i]
        base = [((w[i] - i) % n) + i + 1 for i in range(n)]
        for lift in product((0, n), repeat=len(fixed)):
            win = list(base)
            for i, extra in zip(fixed, lift):
                win[i] += extra
            yield AffinePermutation(tuple(win))


def random_bounded_affine_permutation(n: int, seed=None) -> AffinePermutation:
    """Lift a uniform permutation of residues; fixed points become loops or coloops at random."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    w = rng.permutation(n)
    window = []
    for i in range(n):
        v = ((int(w[i]) - i) % n) + i + 1
        if w[i] == i and rng.integers(2):
            v += n
        window.append(v)
    return AffinePermutation(tuple(window))


def is_noncrossing(blocks: list[int], n: int) -> bool:
    """No ``a < b < c < d`` with ``a, c`` in one block and ``b, d`` in another."""
    owner = {}
    for idx, blk in enumerate(blocks):
        for e in _bits.elements(blk):
            owner[e] = idx
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if owner[a] == owner[b]:
                continue
            for c in range(b + 1, n + 1):
                if owner[c] != owner[a]:
                    continue
                for d in range(c + 1, n + 1):
                    if owner[d] == owner[b]:
                        return False
    return True


def is_cyclic_interval(S: int, n: int) -> bool:
    """``S`` is empty, everything, or a single run of consecutive residues."""
    if S == 0 or S == (1 << n) - 1:
        return True
    starts = sum(1 for e in range(n) if S >> e & 1 and not S >> ((e - 1) % n) & 1)
    return starts == 1
