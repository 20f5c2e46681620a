"""Bitmask helpers for subsets of a ground set ``{1, ..., n}``.

Element ``i`` lives at bit ``i - 1``.  Masks are plain Python ints; bulk
work is done on numpy ``int64`` arrays indexed by mask value.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np


def subset(*elements: int) -> int:
    """Mask of the given 1-based elements."""
    mask = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def from_elements(elements: Iterable[int]) -> int:
    return subset(*elements)


def elements(mask: int) -> tuple[int, ...]:
    """Sorted 1-based elements of ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bit_positions(mask: int) -> list[int]:
    """0-based bit positions set in ``mask``."""
    return [e - 1 for e in elements(mask)]


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, largest first, ending with 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@lru_cache(maxsize=64)
def popcounts(n: int) -> np.ndarray:
    arr = np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)
    arr.setflags(write=False)
    return arr


def submask_array(mask: int) -> np.ndarray:
    """All submasks of ``mask`` as an int64 array.

    Index ``t`` holds the mask obtained by depositing the bits of ``t`` onto
    the set positions of ``mask``, so entry 0 is the empty set and the last
    entry is ``mask`` itself.
    """
    return _deposit_table(tuple(bit_positions(mask)))


@lru_cache(maxsize=4096)
def _deposit_table(positions: tuple[int, ...]) -> np.ndarray:
    out = np.zeros(1, dtype=np.int64)
    for pos in positions:
        out = np.concatenate([out, out | (1 << pos)])
    out.setflags(write=False)
    return out


def subset_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays ``(S, T)`` listing every pair ``S <= T <= [n]`` (3**n pairs)."""
    s = np.zeros(1, dtype=np.int64)
    t = np.zeros(1, dtype=np.int64)
    for pos in range(n):
        b = 1 << pos
        s = np.concatenate([s, s, s | b])
        t = np.concatenate([t, t | b, t | b])
    return s, t


def mobius_transform(values: np.ndarray, n: int) -> np.ndarray:
    """Möbius inversion on the Boolean lattice.

    Returns ``g`` with ``g[S] = sum_{T <= S} (-1)**|S - T| * values[T]``.
    """
    g = np.array(values, dtype=np.int64, copy=True)
    for i in range(n):
        view = g.reshape(-1, 2, 1 << i)
        view[:, 1, :] -= view[:, 0, :]
    return g


def superset_or(flags: np.ndarray, n: int) -> np.ndarray:
    """``out[S]`` is true when some superset ``T >= S`` has ``flags[T]``."""
    out = np.array(flags, dtype=bool, copy=True)
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 0, :] |= view[:, 1, :]
    return out


def subset_max(values: np.ndarray, n: int) -> np.ndarray:
    """``out[S] = max_{T <= S} values[T]``."""
    out = np.array(values, copy=True)
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return out
