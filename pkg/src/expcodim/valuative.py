"""The trivariate polynomial ``s_M``, the Tutte polynomial, and valuation checks.

``s_M(x, y, z) = sum_{S <= T} x^(#S - rk S) y^(rk M - rk T) z^(#T - #S)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod
from typing import Iterable, Mapping

import numpy as np

from . import _bits
from .errors import DimensionMismatch, GroundSetMismatch, InvalidWitness, SizeLimitError
from .linalg import exact_rank
from .matroid import Matroid

MAX_S_N = 20


class Poly:
    """Sparse polynomial with exact integer coefficients in named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[tuple[int, ...], int] | None = None, vars: tuple[str, ...] = ("x", "y", "z")):
        self.vars = tuple(vars)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.vars) or min(exps, default=0) < 0:
                raise ValueError(f"bad exponent tuple {exps}")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    def _like(self, terms) -> "Poly":
        return Poly(terms, self.vars)

    def _check(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise ValueError("polynomials live in different variables")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._like(out)

    def __neg__(self) -> "Poly":
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return self._like({e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.vars == other.vars and self.terms == other.terms

    def __call__(self, *point) -> int:
        return sum(c * prod(v**e for v, e in zip(point, exps)) for exps, c in self.terms.items())

    def coefficient(self, *exps: int) -> int:
        return self.terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items()):
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(self.vars, exps) if e)
            parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(parts)


def TriPoly(terms: Mapping[tuple[int, int, int], int] | None = None) -> Poly:
    return Poly(terms, ("x", "y", "z"))


def s_poly(M: Matroid) -> Poly:
    """``s_M`` by enumerating all ``3**n`` nested pairs ``S <= T``."""
    n = M.n
    if n > MAX_S_N:
        raise SizeLimitError(f"s_M needs 3**n work; n = {n} exceeds {MAX_S_N}")
    r = M.rank_table.astype(np.int64)
    pc = _bits.popcounts(n)
    low = min(n, 12)
    S0, T0 = _bits.subset_pairs(low)
    base = n + 1
    counts = np.zeros(base**3, dtype=np.int64)
    high_bits = n - low
    for hs, ht in zip(*_bits.subset_pairs(high_bits)):
        S = S0 | (int(hs) << low)
        T = T0 | (int(ht) << low)
        key = ((pc[S] - r[S]) * base + (M.k - r[T])) * base + (pc[T] - pc[S])
        counts += np.bincount(key, minlength=base**3)
    terms = {}
    for key in np.nonzero(counts)[0]:
        a, rest = divmod(int(key), base * base)
        b, c = divmod(rest, base)
        terms[(a, b, c)] = int(counts[key])
    return TriPoly(terms)


def tutte(M: Matroid, convention: str = "nullity-first") -> Poly:
    """Tutte polynomial as ``s_M(x - 1, y - 1, 0)``.

    With ``convention="nullity-first"`` the ``x`` exponent tracks nullity ``#S - rk S``
    and ``y`` tracks ``rk M - rk S``, which swaps the roles relative to the
    usual corank-nullity form; ``convention="standard"`` swaps them back.
    """
    if convention not in ("nullity-first", "standard"):
        raise ValueError("convention must be 'nullity-first' or 'standard'")
    out: dict[tuple[int, int], int] = {}
    for (a, b, c), coef in s_poly(M).terms.items():
        if c:
            continue
        if convention == "standard":
            a, b = b, a
        for i in range(a + 1):
            for j in range(b + 1):
                v = coef * comb(a, i) * comb(b, j) * (-1) ** (a - i + b - j)
                out[(i, j)] = out.get((i, j), 0) + v
    return Poly(out, ("x", "y"))


def mixed_xy_derivative(s: Poly, x: int, y: int, z: int) -> int:
    """``d/dx d/dy s`` evaluated at ``(x, y, z)``."""
    total = 0
    for (a, b, c), coef in s.terms.items():
        if a and b:
            total += coef * a * b * x ** (a - 1) * y ** (b - 1) * z**c
    return total


def ec_from_s(M: Matroid | Poly) -> int:
    """Expected codimension as the mixed derivative of ``s_M`` at ``(1, 1, -1)``.

    Expanding, this is ``sum_{S <= T} c(S) (k - rk T) (-1)^(#T - #S)``, the
    Möbius form of the power-set ``ec``.
    """
    s = M if isinstance(M, Poly) else s_poly(M)
    return mixed_xy_derivative(s, 1, 1, -1)


def polytope_vertices(M: Matroid) -> list[tuple[int, ...]]:
    return [tuple((B >> i) & 1 for i in range(M.n)) for B in M.bases()]


def polytope_dim(M: Matroid) -> int:
    verts = polytope_vertices(M)
    if not verts:
        raise ValueError("matroid has no bases")
    v0 = verts[0]
    diffs = [[a - b for a, b in zip(v, v0)] for v in verts[1:]]
    return exact_rank(diffs) if diffs else 0


@dataclass(frozen=True)
class Face:
    matroid: Matroid
    dim: int


@dataclass(frozen=True)
class SubdivisionWitness:
    """Asserted internal faces of a matroidal subdivision of ``P(parent)``."""

    parent: Matroid
    internal_faces: tuple[Face, ...]

    def __post_init__(self):
        object.__setattr__(self, "internal_faces", tuple(self.internal_faces))


@dataclass
class ValuationReport:
    s_identity: bool
    ec_identity: bool
    euler_sum: int
    ec_parent: int
    ec_signed_sum: int
    s_residual: Poly = field(repr=False)

    @property
    def euler_ok(self) -> bool:
        return self.euler_sum == 1

    @property
    def passed(self) -> bool:
        return self.s_identity and self.ec_identity and self.euler_ok

    def as_dict(self) -> dict:
        return {
            "s_identity": self.s_identity,
            "ec_identity": self.ec_identity,
            "ec_parent": self.ec_parent,
            "ec_signed_sum": self.ec_signed_sum,
            "euler_sum": self.euler_sum,
            "euler_ok": self.euler_ok,
            "passed": self.passed,
        }


def check_valuation(W: SubdivisionWitness) -> ValuationReport:
    """Compare ``f(parent)`` with the signed sum over internal faces for ``f = s`` and ``f = ec``."""
    parent = W.parent
    pbases = set(parent.bases())
    pdim = polytope_dim(parent)
    for face in W.internal_faces:
        N = face.matroid
        if N.n != parent.n:
            raise GroundSetMismatch(f"face on {N.n} elements, parent on {parent.n}")
        if not set(N.bases()) <= pbases:
            raise InvalidWitness("a face has a basis that is not a basis of the parent")
        actual = polytope_dim(N)
        if actual != face.dim:
            raise DimensionMismatch(f"face asserted dim {face.dim}, actual {actual}")
    s_parent = s_poly(parent)
    signed = TriPoly()
    euler = 0
    for face in W.internal_faces:
        sign = (-1) ** (pdim - face.dim)
        signed = signed + s_poly(face.matroid) * sign
        euler += sign
    residual = s_parent - signed
    ec_parent = ec_from_s(s_parent)
    ec_sum = sum((-1) ** (pdim - f.dim) * ec_from_s(f.matroid) for f in W.internal_faces)
    return ValuationReport(residual.is_zero(), ec_parent == ec_sum, euler, ec_parent, ec_sum, residual)
