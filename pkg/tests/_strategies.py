"""Hypothesis strategies shared by the unit tests."""
from __future__ import annotations

from hypothesis import strategies as st

from expcodim.ecodim import SubsetFamily
from expcodim.linalg import RealizationMatrix
from expcodim.matroid import from_matrix, from_rank_table
from expcodim.positroid import all_bounded_affine_permutations


@st.composite
def matroids(draw, min_n: int = 0, max_n: int = 6):
    """Column matroids of small matrices over GF(2), GF(3) or Q."""
    n = draw(st.integers(min_n, max_n))
    if n == 0:
        return from_rank_table(0, [0])
    rows = draw(st.integers(1, max(1, n)))
    field = draw(st.sampled_from([2, 3, None]))
    lo, hi = (-2, 2) if field is None else (0, field - 1)
    entries = draw(st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=rows, max_size=rows))
    return from_matrix(RealizationMatrix(entries, field))


@st.composite
def families(draw, n: int):
    """Families on ``[n]`` containing the empty set and the ground set."""
    full = (1 << n) - 1
    extra = draw(st.sets(st.integers(0, full), max_size=min(24, 1 << n)))
    return SubsetFamily(extra | {0, full})


_PERMS = {n: list(all_bounded_affine_permutations(n)) for n in range(1, 6)}


@st.composite
def affine_permutations(draw, max_n: int = 5):
    n = draw(st.integers(1, max_n))
    return draw(st.sampled_from(_PERMS[n]))
