from __future__ import annotations

from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from expcodim import _bits
from expcodim.corpus import square_matroid
from expcodim.ecodim import SubsetFamily, coeff_a, ec_powerset, ec_with
from expcodim.errors import InconsistentRanks, MalformedMatrix
from expcodim.matroid import from_bases, from_rank_table, uniform
from expcodim.positroid import (
    AffinePermutation,
    CyclicInterval,
    CyclicRankMatrix,
    all_bounded_affine_permutations,
    cyclic_rank_matrix,
    ec_positroid,
    essential_set,
    from_affine_permutation,
    interval_coefficients,
    interval_family,
    is_cyclic_interval,
    is_noncrossing,
    is_positroid,
    length,
    permutation_matrix_entry,
    positroid,
    positroid_from_interval_ranks,
    random_bounded_affine_permutation,
    to_affine_permutation,
    validate_rank_matrix,
)

from _strategies import affine_permutations

S = _bits.subset
EX46 = AffinePermutation((3, 6, 5, 8, 7, 10))


def shi_length(p: AffinePermutation) -> int:
    """Independent length formula: sum over i < j in the window of |floor((pi(j) - pi(i)) / n)|."""
    n, w = p.n, p.window
    return sum(abs((w[j] - w[i]) // n) for i in range(n) for j in range(i + 1, n))


def all_loops(n):
    return from_rank_table(n, [0] * (1 << n))


# -- permutations -----------------------------------------------------------------
def test_window_validation():
    with pytest.raises(ValueError):
        AffinePermutation((2, 1))
    with pytest.raises(ValueError):
        AffinePermutation((1, 1))
    with pytest.raises(ValueError):
        AffinePermutation(())
    assert EX46.k == 3
    assert EX46(7) == 9 and EX46.inverse(9) == 7


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_count(n):
    perms = list(all_bounded_affine_permutations(n))
    assert len(perms) == len(set(perms)) == sum(factorial(n) // factorial(j) for j in range(n + 1))


def test_length_examples():
    assert length(EX46) == 3
    assert length(AffinePermutation((1, 2, 3))) == 0
    assert length(AffinePermutation((4, 5, 6))) == 0


@given(affine_permutations())
def test_length_matches_shi_formula(p):
    assert length(p) == shi_length(p)


@settings(max_examples=200)
@given(st.integers(1, 10), st.integers(0, 2**32))
def test_length_matches_shi_formula_random(n, seed):
    p = random_bounded_affine_permutation(n, seed)
    assert length(p) == shi_length(p)


# -- rank matrices ------------------------------------------------------------------
def test_example_matrix_and_roundtrip():
    R = from_affine_permutation(EX46)
    assert R.row(1) == [1, 2, 2, 3, 3, 3, 3]
    assert R.row(2) == [1, 2, 3, 3, 3, 3, 3]
    assert R(4, 7) == 3
    assert validate_rank_matrix(R)
    assert to_affine_permutation(R) == EX46
    assert cyclic_rank_matrix(positroid(EX46)) == R


def test_special_matrices():
    n = 4
    R = cyclic_rank_matrix(all_loops(n))
    assert all(v == 0 for i in range(1, n + 1) for v in R.row(i))
    assert to_affine_permutation(R).window == (1, 2, 3, 4)
    free = uniform(n, n)
    assert to_affine_permutation(cyclic_rank_matrix(free)).window == (5, 6, 7, 8)
    R = from_affine_permutation(AffinePermutation((5, 6, 7, 8)))
    assert R.row(2) == [1, 2, 3, 4, 4]
    for k in range(n + 1):
        R = cyclic_rank_matrix(uniform(k, n))
        assert all(R(i, j) == min(j - i + 1, k) for i in range(1, n + 1) for j in range(i, i + n))


def test_invalid_matrices_rejected():
    R = from_affine_permutation(EX46)
    rows = [R.row(i) for i in range(1, 7)]
    bad = [r[:] for r in rows]
    bad[0][0] = 2
    assert not validate_rank_matrix(CyclicRankMatrix(6, bad))
    with pytest.raises(MalformedMatrix):
        to_affine_permutation(CyclicRankMatrix(6, bad))
    flagged = 0
    for i in range(6):
        for w in range(1, 7):
            for delta in (-1, 1):
                mutated = [r[:] for r in rows]
                mutated[i][w] += delta
                if mutated[i][w] < 0:
                    continue
                flagged += not validate_rank_matrix(CyclicRankMatrix(6, mutated))
    assert flagged > 0


@settings(max_examples=300)
@given(st.integers(1, 10), st.integers(0, 2**32))
def test_roundtrip_random(n, seed):
    p = random_bounded_affine_permutation(n, seed)
    R = from_affine_permutation(p)
    assert validate_rank_matrix(R)
    assert to_affine_permutation(R) == p


def test_generator_is_seeded():
    assert {random_bounded_affine_permutation(1, s).window for s in range(40)} == {(1,), (2,)}
    assert random_bounded_affine_permutation(7, 5) == random_bounded_affine_permutation(7, 5)
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        n = int(rng.integers(1, 9))
        p = random_bounded_affine_permutation(n, rng)
        assert to_affine_permutation(from_affine_permutation(p)) == p


# -- positroid matroids ---------------------------------------------------------------
@given(affine_permutations())
def test_positroid_rank_matrix_matches(p):
    M = positroid(p)
    assert M.k == p.k
    assert cyclic_rank_matrix(M) == from_affine_permutation(p)
    assert is_positroid(M)


@given(affine_permutations())
def test_ec_equals_length(p):
    M = positroid(p)
    assert ec_powerset(M) == length(p) == ec_positroid(p) == ec_with(M, interval_family(p.n))


@given(affine_permutations())
def test_interval_coefficients_are_permutation_entries(p):
    M = positroid(p)
    a = coeff_a(M, interval_family(p.n))
    expected = interval_coefficients(p)
    assert all(a[m] == v for m, v in expected.items())
    assert all(v in (0, 1) for v in expected.values())


def test_permutation_matrix_entry():
    assert permutation_matrix_entry(EX46, 1, 3) == 1
    assert permutation_matrix_entry(EX46, 1, 4) == 0
    assert permutation_matrix_entry(EX46, 7, 9) == 1


def test_essential_set_examples():
    ess = essential_set(EX46)
    assert [(e.interval.i, e.interval.j, e.rank_bound) for e in ess] == [(1, 3, 2), (3, 5, 2), (5, 7, 2)]
    assert essential_set(AffinePermutation((4, 5, 6))) == []
    # the all-loops positroid is cut out by [1, n] having rank 0, which sits on the excluded edge
    assert essential_set(AffinePermutation((1, 2, 3))) == []


@given(affine_permutations())
def test_essential_bounds_regenerate(p):
    bounds = {(e.interval.i, e.interval.j): e.rank_bound for e in essential_set(p)}
    bounds[(1, p.n)] = p.k
    assert positroid_from_interval_ranks(p.n, bounds) == positroid(p)


def test_interval_rank_generation():
    ex = positroid_from_interval_ranks(6, {(1, 3): 2, (3, 5): 2, (5, 7): 2}, k=3)
    assert ex == positroid(EX46)
    assert positroid_from_interval_ranks(5, {}, k=2) == uniform(2, 5)
    sq = positroid_from_interval_ranks(8, {(1, 3): 2, (3, 5): 2, (5, 7): 2, (7, 9): 2}, k=3)
    assert sq == square_matroid()
    with pytest.raises(InconsistentRanks):
        positroid_from_interval_ranks(4, {(1, 2): 0, (1, 3): 2}, k=2)


def test_is_positroid_examples():
    assert is_positroid(square_matroid())
    assert ec_positroid(to_affine_permutation(cyclic_rank_matrix(square_matroid()))) == 4
    for k in range(5):
        assert is_positroid(uniform(k, 4))
    crossing = from_bases(4, [S(1, 2), S(1, 4), S(2, 3), S(3, 4)])
    assert not is_positroid(crossing)
    assert ec_positroid(AffinePermutation((4, 5, 6))) == 0


@given(affine_permutations())
def test_structure_of_positroids(p):
    M = positroid(p)
    n = p.n
    assert is_noncrossing(M.connected_components(), n)
    E = M.ground
    for X in range(1, 1 << n):
        if M.restrict(X).is_connected() and M.contract(X).is_connected():
            assert is_cyclic_interval(X, n)


@settings(max_examples=100)
@given(st.integers(2, 7), st.integers(0, 2**32), st.integers(0, 2**7 - 1))
def test_minors_of_positroids(n, seed, X):
    M = positroid(random_bounded_affine_permutation(n, seed))
    X &= M.ground
    assert is_positroid(M.restrict(X))
    assert is_positroid(M.contract(X))


def test_noncrossing_and_intervals():
    assert is_noncrossing([S(1, 2), S(3, 4)], 4)
    assert not is_noncrossing([S(1, 3), S(2, 4)], 4)
    assert is_cyclic_interval(S(4, 1), 4)
    assert not is_cyclic_interval(S(1, 3), 4)
    assert CyclicInterval(5, 7).mask(6) == S(5, 6, 1)
    assert CyclicInterval(5, 7).size(6) == 3
