"""JSON wire formats for matroids, families, permutations, polynomials and witnesses."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import _bits
from .ecodim import CoeffTable, SubsetFamily
from .linalg import RealizationMatrix
from .matroid import Matroid, from_bases, from_matrix, from_rank_table, rank3_from_lines
from .positroid import AffinePermutation, CyclicInterval, EssentialPosition
from .valuative import Face, Poly, SubdivisionWitness

MATROID_FORMATS = ("bases", "rank_table", "lines", "matrix")


class ParseError(ValueError):
    """Input JSON does not follow the expected schema."""


def _require(obj: Any, key: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"field {key!r} has the wrong type")
    return val


def _sets(data) -> list[int]:
    if not isinstance(data, list) or not all(isinstance(s, list) for s in data):
        raise ParseError("expected a list of element lists")
    try:
        return [_bits.from_elements(int(e) for e in s) for s in data]
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def _set_list(mask: int) -> list[int]:
    return list(_bits.elements(mask))


# -- matroids --------------------------------------------------------------
def matroid_from_json(obj: dict) -> Matroid:
    """Build a matroid; axiom failures propagate as :class:`AxiomViolation`."""
    n = _require(obj, "n", int)
    fmt = _require(obj, "format", str)
    data = _require(obj, "data")
    if fmt == "bases":
        masks = _sets(data)
        if any(m >> n for m in masks):
            raise ParseError("basis element outside the ground set")
        return from_bases(n, masks)
    if fmt == "rank_table":
        if not isinstance(data, list) or len(data) != 1 << n:
            raise ParseError(f"rank_table must list 2**{n} integers")
        return from_rank_table(n, [int(x) for x in data])
    if fmt == "lines":
        return rank3_from_lines(n, [list(l) for l in data])
    if fmt == "matrix":
        p = _require(data, "p")
        rows = _require(data, "rows", list)
        if p == "Q":
            try:
                rows = [[Fraction(x) for x in r] for r in rows]
            except (TypeError, ValueError) as exc:
                raise ParseError(str(exc)) from exc
            A = RealizationMatrix(tuple(map(tuple, rows)), None)
        elif isinstance(p, int):
            A = RealizationMatrix(tuple(tuple(int(x) for x in r) for r in rows), p)
        else:
            raise ParseError("matrix field 'p' must be a prime or 'Q'")
        if A.shape[1] != n:
            raise ParseError(f"matrix has {A.shape[1]} columns, expected {n}")
        return from_matrix(A)
    raise ParseError(f"unknown matroid format {fmt!r}; expected one of {MATROID_FORMATS}")


def matroid_to_json(M: Matroid, fmt: str = "bases") -> dict:
    if fmt == "bases":
        data = sorted(_set_list(b) for b in M.bases())
    elif fmt == "rank_table":
        data = [int(x) for x in M.rank_table]
    else:
        raise ValueError("only 'bases' and 'rank_table' can be written from a matroid")
    return {"n": M.n, "format": fmt, "data": data}


# -- families and coefficients ----------------------------------------------
def family_from_json(obj: dict) -> SubsetFamily:
    return SubsetFamily(_sets(_require(obj, "sets", list)))


def family_to_json(F: SubsetFamily) -> dict:
    return {"sets": [_set_list(m) for m in F]}


def coeffs_to_json(table: CoeffTable) -> list[dict]:
    order = sorted(table, key=lambda m: (_bits.popcount(m), _bits.elements(m)))
    return [{"set": _set_list(m), "value": int(table[m])} for m in order]


def coeffs_from_json(obj: list) -> CoeffTable:
    return {_bits.from_elements(e["set"]): int(e["value"]) for e in obj}


# -- permutations ------------------------------------------------------------
def permutation_from_json(obj: dict) -> AffinePermutation:
    n = _require(obj, "n", int)
    window = _require(obj, "window", list)
    if len(window) != n:
        raise ParseError(f"window has {len(window)} entries, expected {n}")
    return AffinePermutation(tuple(int(v) for v in window))


def permutation_to_json(p: AffinePermutation) -> dict:
    return {"n": p.n, "window": list(p.window)}


def essential_to_json(ess: list[EssentialPosition]) -> list[dict]:
    return [{"interval": [e.interval.i, e.interval.j], "rank": e.rank_bound} for e in ess]


def interval_ranks_from_json(obj: dict) -> tuple[int, dict[CyclicInterval, int], int | None]:
    """``{"n": 6, "k": 3, "ranks": [{"interval": [1, 3], "rank": 2}, ...]}``."""
    n = _require(obj, "n", int)
    k = obj.get("k")
    ranks = {}
    for entry in _require(obj, "ranks", list):
        i, j = _require(entry, "interval", list)
        ranks[CyclicInterval(int(i), int(j))] = int(_require(entry, "rank", int))
    return n, ranks, k


# -- polynomials -----------------------------------------------------------
def poly_to_json(P: Poly) -> dict:
    terms = []
    for exps, c in sorted(P.terms.items()):
        term = dict(zip(P.vars, exps))
        term["coeff"] = c
        terms.append(term)
    return {"terms": terms}


def poly_from_json(obj: dict, vars: tuple[str, ...] = ("x", "y", "z")) -> Poly:
    terms = {}
    for t in _require(obj, "terms", list):
        terms[tuple(int(t.get(v, 0)) for v in vars)] = int(_require(t, "coeff", int))
    return Poly(terms, vars)


# -- witnesses -------------------------------------------------------------
def witness_from_json(obj: dict) -> SubdivisionWitness:
    parent = matroid_from_json(_require(obj, "parent", dict))
    faces = [
        Face(matroid_from_json(_require(f, "matroid", dict)), int(_require(f, "dim", int)))
        for f in _require(obj, "internal_faces", list)
    ]
    return SubdivisionWitness(parent, tuple(faces))


def witness_to_json(W: SubdivisionWitness) -> dict:
    return {
        "parent": matroid_to_json(W.parent),
        "internal_faces": [{"matroid": matroid_to_json(f.matroid), "dim": f.dim} for f in W.internal_faces],
    }


def load(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
