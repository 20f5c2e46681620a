"""Expected codimension of a matroid relative to a family of subsets.

For a family ``F`` the coefficients ``a_F`` are defined by the recursion
``a_F(S) = c(S) - sum_{T in F, T < S} a_F(T)`` with ``c(S) = #S - rk S``,
and ``ec_F(M) = sum_S (k - rk S) a_F(S)``.  The canonical ``ec(M)`` uses the
full power set; :func:`ec` computes it through connected components and
flacet families, which is much cheaper than the power-set sum.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _bits
from .matroid import Matroid, is_connected_on

CoeffTable = dict[int, int]


class SubsetFamily:
    """A duplicate-free collection of subsets ordered by containment.

    Members are kept sorted by (cardinality, mask), which is a linear
    extension of the containment order.
    """

    __slots__ = ("members", "_index", "_arr")

    def __init__(self, members: Iterable[int]):
        uniq = sorted(set(int(m) for m in members), key=lambda m: (_bits.popcount(m), m))
        self.members: tuple[int, ...] = tuple(uniq)
        self._index = {m: i for i, m in enumerate(self.members)}
        self._arr = np.array(self.members, dtype=np.int64)

    @classmethod
    def powerset(cls, n: int) -> "SubsetFamily":
        return cls(range(1 << n))

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]]) -> "SubsetFamily":
        return cls(_bits.from_elements(s) for s in sets)

    def is_powerset_of(self, n: int) -> bool:
        return len(self.members) == 1 << n and self.members[-1] == (1 << n) - 1

    def complement(self, E: int) -> "SubsetFamily":
        """The family ``{E - S : S in F}``, whose containment order is the opposite one."""
        return SubsetFamily(E & ~m for m in self.members)

    def without(self, Z: int) -> "SubsetFamily":
        return SubsetFamily(m for m in self.members if m != Z)

    def subsets_of(self, S: int, proper: bool = True) -> np.ndarray:
        """Member indices of subsets of ``S`` (strict ones unless ``proper`` is False)."""
        hit = (self._arr & ~S) == 0
        if proper:
            hit &= self._arr != S
        return np.nonzero(hit)[0]

    def supersets_of(self, T: int, proper: bool = True) -> np.ndarray:
        hit = (self._arr & T) == T
        if proper:
            hit &= self._arr != T
        return np.nonzero(hit)[0]

    def __contains__(self, S: int) -> bool:
        return S in self._index

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        return isinstance(other, SubsetFamily) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"SubsetFamily({[_bits.elements(m) for m in self.members]})"


class Mobius:
    """Möbius function of a :class:`SubsetFamily` under containment.

    Rows ``mu(T, .)`` and columns ``mu(., S)`` are computed on demand and
    memoised for the lifetime of this object.
    """

    def __init__(self, family: SubsetFamily):
        self.family = family
        self._rows: dict[int, dict[int, int]] = {}
        self._cols: dict[int, dict[int, int]] = {}

    def __call__(self, T: int, S: int) -> int:
        if T & ~S:
            return 0
        return self.row(T).get(S, 0)

    def row(self, T: int) -> dict[int, int]:
        """``{S: mu(T, S)}`` for members ``S`` containing ``T``."""
        if T not in self._rows:
            fam = self.family
            if T not in fam:
                raise KeyError(f"{_bits.elements(T)} is not a member of the family")
            above = [fam.members[i] for i in fam.supersets_of(T, proper=False)]
            row: dict[int, int] = {}
            for S in above:
                if S == T:
                    row[S] = 1
                else:
                    row[S] = -sum(v for U, v in row.items() if U & ~S == 0)
            self._rows[T] = row
        return self._rows[T]

    def col(self, S: int) -> dict[int, int]:
        """``{T: mu(T, S)}`` for members ``T`` contained in ``S``."""
        if S not in self._cols:
            fam = self.family
            if S not in fam:
                raise KeyError(f"{_bits.elements(S)} is not a member of the family")
            below = [fam.members[i] for i in fam.subsets_of(S, proper=False)][::-1]
            col: dict[int, int] = {}
            for T in below:
                if T == S:
                    col[T] = 1
                else:
                    col[T] = -sum(v for U, v in col.items() if T & ~U == 0)
            self._cols[S] = col
        return self._cols[S]


def mobius(family: SubsetFamily) -> Mobius:
    return Mobius(family)


def corank_excess(M: Matroid, S: int) -> int:
    """``c(S) = #S - rk S``."""
    return M.nullity(S)


def coeff_a(M: Matroid, family: SubsetFamily) -> CoeffTable:
    """``a_F(S)`` for every member, by the recursion in containment order."""
    a: list[int] = []
    for S in family.members:
        if S == 0:
            a.append(0)
            continue
        below = family.subsets_of(S)
        a.append(M.nullity(S) - sum(a[i] for i in below))
    return dict(zip(family.members, a))


def coeff_b(M: Matroid, family: SubsetFamily) -> CoeffTable:
    """``b_F(T) = sum_S (k - rk S) mu_F(T, S)``.

    Computed by the equivalent downward recursion
    ``b_F(T) = (k - rk T) - sum_{S in F, S > T} b_F(S)``.
    """
    b: dict[int, int] = {}
    members = family.members
    for idx in range(len(members) - 1, -1, -1):
        T = members[idx]
        above = family.supersets_of(T)
        b[T] = (M.k - M.rank(T)) - sum(b[members[i]] for i in above)
    return {T: b[T] for T in members}


def coeff_a_powerset(M: Matroid) -> np.ndarray:
    """Power-set coefficients ``a(S)`` as an array indexed by mask."""
    # |a(S)| <= sum_T c(T) <= n 2**n, well inside int64 for n <= 24
    c = _bits.popcounts(M.n) - M.rank_table.astype(np.int64)
    return _bits.mobius_transform(c, M.n)


def ec_powerset(M: Matroid) -> int:
    """``ec`` over the full power set, via a fast Boolean Möbius transform."""
    a = coeff_a_powerset(M)
    return int(np.dot(M.k - M.rank_table.astype(np.int64), a))


def ec_with(M: Matroid, family: SubsetFamily) -> int:
    """``ec_F(M) = sum_{S in F} (k - rk S) a_F(S)``."""
    if family.is_powerset_of(M.n):
        return ec_powerset(M)
    a = coeff_a(M, family)
    return sum((M.k - M.rank(S)) * v for S, v in a.items())


def flacets(M: Matroid) -> SubsetFamily:
    """Nonempty ``S`` with both ``M|S`` and ``M/S`` connected.

    One-element and empty matroids count as connected, so ``E`` is a
    flacet of a connected ``M`` and singletons are flacets whenever the
    contraction by them stays connected.
    """
    table = M.rank_table
    E = M.ground
    out = []
    for S in range(1, 1 << M.n):
        if is_connected_on(table, S) and is_connected_on(table, E & ~S, S):
            out.append(S)
    return SubsetFamily(out)


def direct_sum_correction(parts: Iterable[tuple[int, int]]) -> int:
    """Cross term of ``ec`` over a direct sum of pieces given as ``(n_i, k_i)``.

    ``ec(⊕ M_i) = sum_i ec(M_i) + sum_{i != j} k_j (n_i - k_i)``.  The extra
    term is the gap between the dimension of the big Grassmannian and the
    product of the small ones.
    """
    parts = list(parts)
    K = sum(k for _, k in parts)
    C = sum(n - k for n, k in parts)
    return K * C - sum(k * (n - k) for n, k in parts)


def ec(M: Matroid) -> int:
    """Canonical expected codimension.

    Sums flacet-family values over connected components, plus the
    direct-sum correction; equals :func:`ec_powerset`.
    """
    comps = M.connected_components()
    total = 0
    parts = []
    for C in comps:
        piece = M.restrict(C)
        parts.append((piece.n, piece.k))
        if piece.n > 1:
            total += ec_with(piece, flacets(piece))
    return total + direct_sum_correction(parts)


@dataclass(frozen=True)
class RemovalDelta:
    """Predicted changes when a member ``Z`` is dropped from a family."""

    dec: int
    da: CoeffTable
    db: CoeffTable


def removal_delta(M: Matroid, family: SubsetFamily, Z: int) -> RemovalDelta:
    """Deltas ``X_F - X_{F - Z}`` for ``ec``, ``a`` and ``b``.

    ``dec = a_F(Z) b_F(Z)``, ``da(S) = a_F(Z) mu_F(Z, S)`` and
    ``db(S) = mu_F(S, Z) b_F(Z)`` for the remaining members ``S``.
    """
    if Z not in family:
        raise KeyError(f"{_bits.elements(Z)} is not a member of the family")
    a = coeff_a(M, family)
    b = coeff_b(M, family)
    mu = Mobius(family)
    row, col = mu.row(Z), mu.col(Z)
    rest = [S for S in family.members if S != Z]
    da = {S: a[Z] * row.get(S, 0) for S in rest}
    db = {S: col.get(S, 0) * b[Z] for S in rest}
    return RemovalDelta(a[Z] * b[Z], da, db)
