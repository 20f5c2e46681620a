from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

from expcodim import _bits
from expcodim.corpus import square_matroid
from expcodim.ecodim import SubsetFamily, coeff_a
from expcodim.io import (
    ParseError,
    coeffs_from_json,
    coeffs_to_json,
    family_from_json,
    family_to_json,
    interval_ranks_from_json,
    load,
    matroid_from_json,
    matroid_to_json,
    permutation_from_json,
    permutation_to_json,
    poly_from_json,
    poly_to_json,
    witness_from_json,
    witness_to_json,
)
from expcodim.errors import AxiomViolation
from expcodim.positroid import AffinePermutation
from expcodim.valuative import s_poly
from expcodim.cli import resolve_path

from _strategies import affine_permutations, matroids


@given(matroids(max_n=5))
def test_matroid_roundtrip(M):
    for fmt in ("bases", "rank_table"):
        obj = json.loads(json.dumps(matroid_to_json(M, fmt)))
        assert matroid_from_json(obj) == M


def test_matrix_and_lines_formats():
    M = matroid_from_json({"n": 3, "format": "matrix", "data": {"p": 2, "rows": [[1, 0, 1], [0, 1, 1]]}})
    assert M.k == 2 and M.rank(_bits.subset(1, 2, 3)) == 2
    Q = matroid_from_json({"n": 2, "format": "matrix", "data": {"p": "Q", "rows": [["1/2", 1]]}})
    assert Q.k == 1 and Q.loops() == 0
    L = matroid_from_json({"n": 8, "format": "lines", "data": [[1, 2, 3], [3, 4, 5], [5, 6, 7], [7, 8, 1]]})
    assert L == square_matroid()


@pytest.mark.parametrize("obj", [
    {"format": "bases", "data": [[1]]},
    {"n": 2, "format": "nope", "data": []},
    {"n": 2, "format": "bases"},
    {"n": 2, "format": "bases", "data": [[3]]},
    {"n": 2, "format": "rank_table", "data": [0, 1]},
    [],
])
def test_malformed_matroids(obj):
    with pytest.raises((ParseError, ValueError)):
        matroid_from_json(obj)


def test_axiom_errors_are_not_parse_errors():
    with pytest.raises(AxiomViolation):
        matroid_from_json({"n": 2, "format": "rank_table", "data": [0, 1, 0, 2]})


def test_family_and_coeffs_roundtrip():
    F = SubsetFamily.from_sets([[], [1, 2], [1, 2, 3]])
    assert family_from_json(family_to_json(F)) == F
    a = coeff_a(square_matroid(), SubsetFamily.powerset(8))
    assert coeffs_from_json(coeffs_to_json(a)) == a


@given(affine_permutations())
def test_permutation_roundtrip(p):
    assert permutation_from_json(permutation_to_json(p)) == p


def test_permutation_n_mismatch():
    with pytest.raises((ParseError, ValueError)):
        permutation_from_json({"n": 3, "window": [1, 2]})


@settings(max_examples=30)
@given(matroids(max_n=4))
def test_poly_roundtrip(M):
    s = s_poly(M)
    assert poly_from_json(json.loads(json.dumps(poly_to_json(s)))) == s


def test_bundled_files_load():
    for name in ("square", "pappus", "uniform_2_4", "uniform_1_2", "loop", "coloop", "square_matrix"):
        matroid_from_json(load(resolve_path(f"{name}.json")))
    assert permutation_from_json(load(resolve_path("example46.json"))) == AffinePermutation((3, 6, 5, 8, 7, 10))
    n, ranks, k = interval_ranks_from_json(load(resolve_path("example46_ranks.json")))
    assert (n, k, len(ranks)) == (6, 3, 3)
    W = witness_from_json(load(resolve_path("delta24_split.json")))
    assert witness_from_json(witness_to_json(W)) == W


def test_load_reports_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(ParseError):
        load(p)
