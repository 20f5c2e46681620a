"""Exact linear algebra over GF(p) and the rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

Scalar = Union[int, Fraction]

MAX_PRIME = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _to_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point entries are not accepted; use ints, Fractions or 'a/b' strings")
    return Fraction(x)


@dataclass(frozen=True)
class RealizationMatrix:
    """A k x n matrix whose columns realise a matroid.

    ``p`` is a prime for GF(p) or ``None`` for the rationals.  Entries are
    reduced on construction (residues in ``[0, p)`` or ``Fraction``).
    """

    rows: tuple[tuple[Scalar, ...], ...]
    p: int | None = None

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        if self.p is None:
            rows = tuple(tuple(_to_fraction(x) for x in r) for r in rows)
        else:
            if not (_is_prime(self.p) and self.p <= MAX_PRIME):
                raise ValueError(f"p must be a prime <= 2**31, got {self.p}")
            rows = tuple(tuple(int(x) % self.p for x in r) for r in rows)
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.rows)


class _Echelon:
    """Incrementally built reduced basis; ``add`` reports whether a vector was new."""

    __slots__ = ("p", "basis")

    def __init__(self, p: int | None, basis=()):
        self.p = p
        self.basis = list(basis)

    def copy(self) -> "_Echelon":
        return _Echelon(self.p, self.basis)

    def add(self, vec: Sequence[Scalar]) -> bool:
        p = self.p
        v = list(vec)
        for piv, b in self.basis:
            c = v[piv]
            if c:
                if p is None:
                    v = [x - c * y for x, y in zip(v, b)]
                else:
                    v = [(x - c * y) % p for x, y in zip(v, b)]
        for piv, x in enumerate(v):
            if x:
                break
        else:
            return False
        if p is None:
            inv = 1 / Fraction(x)
            v = [y * inv for y in v]
        else:
            inv = pow(x, -1, p)
            v = [(y * inv) % p for y in v]
        self.basis.append((piv, v))
        return True


def exact_rank(rows: Sequence[Sequence[Scalar]], p: int | None = None) -> int:
    """Rank of a matrix over GF(p) (or Q when ``p`` is None)."""
    ech = _Echelon(p)
    return sum(ech.add(r if p is None else [int(x) % p for x in r]) for r in rows)


def column_rank_table(A: RealizationMatrix) -> np.ndarray:
    """``table[S]`` = dimension of the span of the columns indexed by ``S``."""
    k, n = A.shape
    table = np.zeros(1 << n, dtype=np.uint8)
    if A.p == 2:
        cols = [sum(int(A.rows[i][j]) << i for i in range(k)) for j in range(n)]
        _gf2_fill(cols, table)
        return table
    cols = [A.column(j) for j in range(n)]

    def dfs(start: int, mask: int, ech: _Echelon, rank: int) -> None:
        for j in range(start, n):
            child = ech.copy()
            r = rank + child.add(cols[j])
            m = mask | (1 << j)
            table[m] = r
            dfs(j + 1, m, child, r)

    dfs(0, 0, _Echelon(A.p), 0)
    return table


def _gf2_fill(cols: list[int], table: np.ndarray) -> None:
    n = len(cols)

    def dfs(start: int, mask: int, basis: tuple[int, ...], rank: int) -> None:
        for j in range(start, n):
            v = cols[j]
            for b in basis:
                v = min(v, v ^ b)
            m = mask | (1 << j)
            if v:
                nb = tuple(sorted(basis + (v,), reverse=True))
                table[m] = rank + 1
                dfs(j + 1, m, nb, rank + 1)
            else:
                table[m] = rank
                dfs(j + 1, m, basis, rank)

    dfs(0, 0, (), 0)
