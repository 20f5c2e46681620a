"""Matroids stored as full rank tables, with constructors and minors.

A :class:`Matroid` on ``{1, ..., n}`` keeps ``rank[S]`` for every mask ``S``
(bit ``i - 1`` is element ``i``).  Everything downstream is a fold over this
table, so constructors materialise it once and validate the rank axioms.
"""
from __future__ import annotations

import os
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _bits
from .errors import AxiomViolation, InvalidPresentation, SizeLimitError
from .linalg import RealizationMatrix, column_rank_table

DEFAULT_MAX_N = 24


def max_ground_size() -> int:
    """Cap on ``n`` for rank-table operations; ``MATROID_MAX_N`` overrides it."""
    env = os.environ.get("MATROID_MAX_N")
    return int(env) if env else DEFAULT_MAX_N


def _check_size(n: int) -> None:
    if n < 0:
        raise ValueError("ground set size must be nonnegative")
    if n > max_ground_size():
        raise SizeLimitError(f"n = {n} exceeds the cap of {max_ground_size()} (set MATROID_MAX_N to override)")


class Matroid:
    """An immutable matroid on ``{1, ..., n}`` given by its rank table."""

    __slots__ = ("n", "k", "_rank", "_key")

    def __init__(self, n: int, table, *, validate: bool = True):
        _check_size(n)
        arr = np.asarray(table)
        if arr.shape != (1 << n,):
            raise ValueError(f"rank table must have 2**{n} = {1 << n} entries, got {arr.shape}")
        if np.any(arr < 0) or np.any(arr > n):
            raise AxiomViolation("unit-increase", ())
        arr = arr.astype(np.uint8)
        if validate:
            check_rank_axioms(n, arr)
        arr.setflags(write=False)
        self.n = n
        self._rank = arr
        self.k = int(arr[-1])
        self._key = None

    # -- basic queries -------------------------------------------------
    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    @property
    def rank_table(self) -> np.ndarray:
        return self._rank

    def rank(self, S: int) -> int:
        if S >> self.n:
            raise ValueError(f"subset {_bits.elements(S)} is outside the ground set [{self.n}]")
        return int(self._rank[S])

    def nullity(self, S: int) -> int:
        return _bits.popcount(S) - self.rank(S)

    def is_independent(self, S: int) -> bool:
        return self.rank(S) == _bits.popcount(S)

    def bases(self) -> list[int]:
        pc = _bits.popcounts(self.n)
        r = self._rank
        return [int(b) for b in np.nonzero((pc == self.k) & (r == self.k))[0]]

    def closure(self, S: int) -> int:
        r = self.rank(S)
        out = S
        for i in range(self.n):
            b = 1 << i
            if not S & b and self._rank[S | b] == r:
                out |= b
        return out

    def flats(self) -> list[int]:
        masks = np.arange(1 << self.n, dtype=np.int64)
        is_flat = np.ones(1 << self.n, dtype=bool)
        for i in range(self.n):
            b = 1 << i
            outside = (masks & b) == 0
            same = self._rank[masks | b] == self._rank
            is_flat &= ~(outside & same)
        return [int(m) for m in np.nonzero(is_flat)[0]]

    def circuits(self) -> list[int]:
        masks = np.arange(1 << self.n, dtype=np.int64)
        pc = _bits.popcounts(self.n)
        indep = pc == self._rank
        circ = ~indep
        for i in range(self.n):
            b = 1 << i
            has = (masks & b) != 0
            circ &= ~has | indep[masks & ~b]
        return [int(m) for m in np.nonzero(circ)[0]]

    def loops(self) -> int:
        return _bits.from_elements(i + 1 for i in range(self.n) if self._rank[1 << i] == 0)

    def coloops(self) -> int:
        E = self.ground
        return _bits.from_elements(
            i + 1 for i in range(self.n) if self._rank[E ^ (1 << i)] == self.k - 1
        )

    def is_parallel(self, x: int, y: int) -> bool:
        """``rk{x, y} = 1`` for distinct non-loop elements ``x``, ``y``."""
        if x == y:
            return self._rank[_bits.subset(x)] == 1
        return self._rank[_bits.subset(x, y)] == 1 and self._rank[_bits.subset(x)] == 1 and self._rank[_bits.subset(y)] == 1

    # -- connectivity --------------------------------------------------
    def connected_components(self) -> list[int]:
        """Components via circuit sharing; loops and coloops are singletons."""
        parent = list(range(self.n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for c in self.circuits():
            pos = _bits.bit_positions(c)
            root = find(pos[0])
            for q in pos[1:]:
                parent[find(q)] = root
        classes: dict[int, int] = {}
        for i in range(self.n):
            classes[find(i)] = classes.get(find(i), 0) | (1 << i)
        return sorted(classes.values(), key=lambda m: (m & -m))

    def is_connected(self) -> bool:
        return is_connected_on(self._rank, self.ground)

    # -- derived matroids ----------------------------------------------
    def dual(self) -> "Matroid":
        pc = _bits.popcounts(self.n)
        table = pc - self.k + self._rank[::-1].astype(np.int64)
        return Matroid(self.n, table, validate=False)

    def restrict(self, S: int) -> "Matroid":
        """``M|S`` relabelled to ``1..#S`` in increasing order (see :func:`relabeling`)."""
        subs = _bits.submask_array(S)
        return Matroid(_bits.popcount(S), self._rank[subs], validate=False)

    def delete(self, S: int) -> "Matroid":
        return self.restrict(self.ground & ~S)

    def contract(self, S: int) -> "Matroid":
        """``M/S`` on ``E - S``, relabelled in increasing order."""
        rest = self.ground & ~S
        subs = _bits.submask_array(rest)
        table = self._rank[subs | S].astype(np.int64) - int(self._rank[S])
        return Matroid(self.n - _bits.popcount(S), table, validate=False)

    # -- dunder --------------------------------------------------------
    def _identity(self):
        if self._key is None:
            self._key = (self.n, self._rank.tobytes())
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, k={self.k}, bases={len(self.bases())})"


def relabeling(S: int) -> tuple[int, ...]:
    """Original labels of the elements of a minor on ``S``: new ``i`` is ``result[i - 1]``."""
    return _bits.elements(S)


# -- axioms --------------------------------------------------------------
def check_rank_axioms(n: int, table: np.ndarray) -> None:
    """Raise :class:`AxiomViolation` with a witness if any rank axiom fails."""
    r = np.asarray(table, dtype=np.int64)
    if r[0] != 0:
        raise AxiomViolation("empty-rank", ((),))
    masks = np.arange(1 << n, dtype=np.int64)
    for i in range(n):
        b = 1 << i
        F = masks[(masks & b) == 0]
        step = r[F | b] - r[F]
        bad = np.nonzero((step < 0) | (step > 1))[0]
        if bad.size:
            f = int(F[bad[0]])
            raise AxiomViolation("unit-increase", (_bits.elements(f), _bits.elements(f | b)))
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = 1 << i, 1 << j
            F = masks[(masks & (bi | bj)) == 0]
            rf = r[F]
            flat = (r[F | bi] == rf) & (r[F | bj] == rf)
            bad = np.nonzero(flat & (r[F | bi | bj] != rf))[0]
            if bad.size:
                f = int(F[bad[0]])
                raise AxiomViolation(
                    "exchange", (_bits.elements(f), _bits.elements(f | bi), _bits.elements(f | bj))
                )


def is_connected_on(table: np.ndarray, G: int, S: int = 0) -> bool:
    """Connectivity of the minor ``(M/S)|G`` via the separator criterion.

    ``G`` and ``S`` must be disjoint.  Matroids on at most one element count
    as connected.
    """
    if _bits.popcount(G) <= 1:
        return True
    return not _separators(table, G, S)[1:-1].any()


def _separators(table: np.ndarray, G: int, S: int) -> np.ndarray:
    subs = _bits.submask_array(G)
    r = table.astype(np.int64) if table.dtype != np.int64 else table
    rs = int(r[S])
    total = int(r[G | S]) - rs
    return (r[subs | S] + r[(G ^ subs) | S] - 2 * rs) == total


def separator_components(table: np.ndarray, G: int, S: int = 0) -> list[int]:
    """Finest decomposition of ``(M/S)|G`` into separators ``A`` with ``rk A + rk(G-A) = rk G``."""
    subs = _bits.submask_array(G)
    sep = _separators(table, G, S)
    comps = set()
    for pos in _bits.bit_positions(G):
        cand = subs[sep & ((subs >> pos) & 1 == 1)]
        comps.add(int(np.bitwise_and.reduce(cand)))
    return sorted(comps, key=lambda m: (m & -m))


# -- constructors ----------------------------------------------------------
def from_rank_table(n: int, table: Sequence[int]) -> Matroid:
    return Matroid(n, np.asarray(table, dtype=np.int64))


def from_bases(n: int, bases: Iterable[int]) -> Matroid:
    """Matroid from its bases; ``rank(S) = max_B #(S & B)``."""
    _check_size(n)
    bases = sorted(set(int(b) for b in bases))
    if any(b >> n for b in bases):
        raise ValueError("basis outside the ground set")
    check_basis_axioms(bases)
    flags = np.zeros(1 << n, dtype=bool)
    flags[bases] = True
    indep = _bits.superset_or(flags, n)
    sizes = np.where(indep, _bits.popcounts(n), 0)
    return Matroid(n, _bits.subset_max(sizes, n), validate=False)


def check_basis_axioms(bases: Sequence[int]) -> None:
    """Raise :class:`AxiomViolation` unless ``bases`` is a nonempty exchange-closed antichain."""
    if not bases:
        raise AxiomViolation("nonempty", ())
    sizes = {_bits.popcount(b) for b in bases}
    bset = set(bases)
    if len(sizes) > 1:
        for a, b in combinations(sorted(bases, key=_bits.popcount), 2):
            if a & ~b == 0:
                raise AxiomViolation("antichain", (_bits.elements(a), _bits.elements(b)))
    for B in bases:
        for B2 in bases:
            for x in _bits.bit_positions(B & ~B2):
                base = B & ~(1 << x)
                if not any((base | (1 << y)) in bset for y in _bits.bit_positions(B2)):
                    raise AxiomViolation(
                        "basis-exchange", (_bits.elements(B), _bits.elements(B2), (x + 1,))
                    )


def from_matrix(A: RealizationMatrix) -> Matroid:
    """Column matroid of ``A`` over its field, by exact elimination."""
    _check_size(A.shape[1])
    return Matroid(A.shape[1], column_rank_table(A), validate=False)


def rank3_from_lines(n: int, lines: Iterable[Iterable[int]]) -> Matroid:
    """Simple rank-3 matroid whose only dependent triples lie on the given lines."""
    if n < 3:
        raise ValueError("a line presentation needs n >= 3")
    masks = [_bits.from_elements(l) for l in lines]
    for m in masks:
        if _bits.popcount(m) < 3:
            raise InvalidPresentation(f"line {_bits.elements(m)} has fewer than 3 points")
        if m >> n:
            raise InvalidPresentation(f"line {_bits.elements(m)} leaves the ground set")
    for a, b in combinations(masks, 2):
        if _bits.popcount(a & b) >= 2:
            raise InvalidPresentation(f"lines {_bits.elements(a)} and {_bits.elements(b)} share two points")
    _check_size(n)
    pc = _bits.popcounts(n)
    table = np.minimum(pc, 3)
    masks_arr = np.arange(1 << n, dtype=np.int64)
    for m in masks:
        on_line = ((masks_arr & ~m) == 0) & (pc >= 3)
        table = np.where(on_line, 2, table)
    return Matroid(n, table)


def uniform(k: int, n: int) -> Matroid:
    if not 0 <= k <= n:
        raise ValueError(f"uniform matroid needs 0 <= k <= n, got k={k}, n={n}")
    _check_size(n)
    return Matroid(n, np.minimum(_bits.popcounts(n), k), validate=False)


def loop() -> Matroid:
    return uniform(0, 1)


def coloop() -> Matroid:
    return uniform(1, 1)


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    """``M ⊕ N`` with ``N``'s elements relabelled to follow ``M``'s."""
    _check_size(M.n + N.n)
    table = np.add.outer(N.rank_table.astype(np.int64), M.rank_table.astype(np.int64)).ravel()
    return Matroid(M.n + N.n, table, validate=False)


def loop_extension(M: Matroid) -> Matroid:
    return direct_sum(M, loop())


def coloop_extension(M: Matroid) -> Matroid:
    return direct_sum(M, coloop())
