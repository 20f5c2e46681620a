"""Invariant suites run by ``expcodim verify`` and the acceptance tests.

Each suite walks its corpus in increasing size, so the first recorded
failure is a smallest counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _bits
from .corpus import binary_matroids, random_connected_matroid, random_family, random_matroid
from .ecodim import (
    SubsetFamily,
    coeff_a,
    coeff_a_powerset,
    coeff_b,
    direct_sum_correction,
    ec,
    ec_powerset,
    ec_with,
    flacets,
    removal_delta,
)
from .io import matroid_to_json, witness_to_json
from .matroid import Matroid, check_rank_axioms, direct_sum, is_connected_on, separator_components
from .positroid import (
    AffinePermutation,
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
    positroid,
    positroid_from_interval_ranks,
    random_bounded_affine_permutation,
    to_affine_permutation,
)
from .valuative import SubdivisionWitness, check_valuation, ec_from_s, s_poly, tutte

SUITES = ("axioms", "duality", "identities", "flacets", "positroids", "svals", "valuation")


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, check: str, **data) -> None:
        self.failures.append({"check": check, **data})

    def as_dict(self) -> dict:
        out = {"suite": self.name, "passed": self.passed, "checked": self.checked, "failures": len(self.failures)}
        out.update(self.notes)
        if self.failures:
            out["counterexample"] = self.failures[0]
        return out


def binary_corpus(n_max: int) -> Iterable[Matroid]:
    for n in range(1, n_max + 1):
        yield from binary_matroids(n)


def _mj(M: Matroid) -> dict:
    return matroid_to_json(M)


# -- matroid axioms ------------------------------------------------------------
def submodular(M: Matroid) -> bool:
    r = M.rank_table.astype(np.int64)
    A = np.arange(1 << M.n, dtype=np.int64)[:, None]
    B = A.T
    return bool(np.all(r[A] + r[B] >= r[A | B] + r[A & B]))


def suite_axioms(n_max: int = 5) -> SuiteResult:
    res = SuiteResult("axioms")
    for M in binary_corpus(n_max):
        res.checked += 1
        try:
            check_rank_axioms(M.n, M.rank_table)
        except AxiomViolation as exc:
            res.fail("rank-axioms", matroid=_mj(M), error=str(exc))
        if not submodular(M):
            res.fail("submodularity", matroid=_mj(M))
        if any(_bits.popcount(B) != M.k for B in M.bases()):
            res.fail("basis-size", matroid=_mj(M))
        if not _components_agree(M):
            res.fail("components", matroid=_mj(M))
    return res


def _components_agree(M: Matroid) -> bool:
    return M.connected_components() == separator_components(M.rank_table, M.ground)


# -- duality -----------------------------------------------------------------
def suite_duality(n_max: int = 5, samples: int = 100, seed: int = 0) -> SuiteResult:
    """Dual rank formula, involution, minors, and the two dualization identities for a and b."""
    res = SuiteResult("duality")
    rng = np.random.default_rng(seed)
    for M in binary_corpus(n_max):
        res.checked += 1
        D = M.dual()
        E = M.ground
        pc = _bits.popcounts(M.n)
        if not np.array_equal(D.rank_table.astype(np.int64), pc - M.k + M.rank_table[E ^ np.arange(1 << M.n)]):
            res.fail("dual-rank", matroid=_mj(M))
        if D.dual() != M:
            res.fail("involution", matroid=_mj(M))
        S = int(rng.integers(0, 1 << M.n))
        if M.restrict(S).dual() != D.contract(E & ~S):
            res.fail("restrict-contract", matroid=_mj(M), S=list(_bits.elements(S)))
    for _ in range(samples):
        n = int(rng.integers(2, 7))
        M = random_matroid(n, rng, p=int(rng.choice([2, 3])))
        F = random_family(n, rng)
        res.checked += 1
        ok, detail = dualization_holds(M, F)
        if not ok:
            res.fail("dualization", matroid=_mj(M), family=[list(_bits.elements(m)) for m in F], detail=detail)
    return res


def dualization_holds(M: Matroid, F: SubsetFamily) -> tuple[bool, str]:
    E = M.ground
    D = M.dual()
    Fc = F.complement(E)
    if ec_with(M, F) != ec_with(D, Fc):
        return False, "ec"
    a = coeff_a(M, F)
    b = coeff_b(D, Fc)
    for S, v in a.items():
        if b[E & ~S] != v:
            return False, f"a/b at {_bits.elements(S)}"
    return True, ""


# -- family identities ---------------------------------------------------
def removal_identities_hold(M: Matroid, F: SubsetFamily, Z: int) -> bool:
    pred = removal_delta(M, F, Z)
    G = F.without(Z)
    if ec_with(M, F) - ec_with(M, G) != pred.dec:
        return False
    aF, aG = coeff_a(M, F), coeff_a(M, G)
    bF, bG = coeff_b(M, F), coeff_b(M, G)
    return all(aF[S] - aG[S] == pred.da[S] and bF[S] - bG[S] == pred.db[S] for S in G)


def disconnected_vanishing_holds(M: Matroid) -> bool:
    """Power-set ``a(S) = 0`` whenever ``M|S`` is disconnected."""
    a = coeff_a_powerset(M)
    return all(is_connected_on(M.rank_table, int(S)) for S in np.nonzero(a)[0])


def direct_sum_identity_holds(M: Matroid, N: Matroid) -> bool:
    """``ec(M ⊕ N) = ec(M) + ec(N) + k_N c_M(E) + k_M c_N(F)``."""
    lhs = ec_powerset(direct_sum(M, N))
    return lhs == ec_powerset(M) + ec_powerset(N) + direct_sum_correction([(M.n, M.k), (N.n, N.k)])


def suite_identities(samples: int = 1000, seed: int = 0, n_max: int = 6) -> SuiteResult:
    res = SuiteResult("identities")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        n = int(rng.integers(1, n_max + 1))
        M = random_matroid(n, rng, p=int(rng.choice([2, 3])))
        F = random_family(n, rng, density=float(rng.uniform(0.2, 0.8)))
        Z = int(rng.choice(F.members))
        res.checked += 1
        if not removal_identities_hold(M, F, Z):
            res.fail("removal", matroid=_mj(M), family=[list(_bits.elements(m)) for m in F], Z=list(_bits.elements(Z)))
        if not disconnected_vanishing_holds(M):
            res.fail("disconnected-vanishing", matroid=_mj(M))
        N = random_matroid(int(rng.integers(1, 5)), rng)
        if not direct_sum_identity_holds(M, N):
            res.fail("direct-sum", M=_mj(M), N=_mj(N))
    return res


# -- flacets -----------------------------------------------------------------
def suite_flacets(n_max: int = 6, samples: int = 100, seed: int = 0) -> SuiteResult:
    """Power-set ``ec`` equals the flacet-family ``ec`` on connected matroids."""
    res = SuiteResult("flacets")
    connected = 0
    for M in binary_corpus(n_max):
        if not M.is_connected():
            continue
        connected += 1
        _check_flacets(res, M)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        _check_flacets(res, random_connected_matroid(n_max + 1, rng))
    res.notes["exhaustive_connected"] = connected
    return res


def _check_flacets(res: SuiteResult, M: Matroid) -> None:
    res.checked += 1
    full = ec_powerset(M)
    if ec_with(M, flacets(M)) != full or ec(M) != full:
        res.fail("flacet-invariance", matroid=_mj(M), ec_powerset=full)


# -- positroids --------------------------------------------------------------
def check_positroid(p: AffinePermutation, deep: bool = True) -> list[str]:
    """Names of the positroid properties that fail for ``p`` (empty when all hold)."""
    bad = []
    n = p.n
    M = positroid(p)
    R = from_affine_permutation(p)
    if cyclic_rank_matrix(M) != R:
        bad.append("rank-matrix")
    if to_affine_permutation(R) != p:
        bad.append("roundtrip")
    ell = length(p)
    if not (ec_powerset(M) == ell == ec_with(M, interval_family(n)) == ec_positroid(p)):
        bad.append("ec-length")
    a = coeff_a(M, interval_family(n))
    if any(a[m] != v for m, v in interval_coefficients(p).items()):
        bad.append("interval-coefficients")
    if not deep:
        return bad
    bounds = {(e.interval.i, e.interval.j): e.rank_bound for e in essential_set(p)}
    bounds[(1, n)] = M.k
    if positroid_from_interval_ranks(n, bounds) != M:
        bad.append("essential-regeneration")
    if not is_noncrossing(M.connected_components(), n):
        bad.append("noncrossing")
    E = M.ground
    for X in range(1, 1 << n):
        if is_connected_on(M.rank_table, X) and is_connected_on(M.rank_table, E & ~X, X):
            if not is_cyclic_interval(X, n):
                bad.append("flacets-are-intervals")
                break
    if not _proof_sums_hold(p):
        bad.append("proof-sums")
    return bad


def _proof_sums_hold(p: AffinePermutation) -> bool:
    """Over all 1s ``(i, pi(i))``: ``sum #[i, pi(i)] = nk + n`` and ``sum d = length + n``."""
    n, k = p.n, p.k
    R = from_affine_permutation(p)
    sizes = sum(p(i) - i + 1 for i in range(1, n + 1))
    d = sum((p(i) - i + 1) - R(i, p(i)) for i in range(1, n + 1))
    return sizes == n * k + n and d == length(p) + n


def suite_positroids(n_max: int = 5, samples: int = 0, sample_sizes: Iterable[int] | None = None,
                     seed: int = 0, deep: bool = True) -> SuiteResult:
    res = SuiteResult("positroids")
    exhaustive = 0
    for n in range(1, n_max + 1):
        for p in all_bounded_affine_permutations(n):
            exhaustive += 1
            _record_positroid(res, p, deep)
    sizes = list(sample_sizes) if sample_sizes is not None else [n_max + 1, n_max + 2, n_max + 3]
    rng = np.random.default_rng(seed)
    for n in sizes if samples else []:
        for _ in range(samples):
            _record_positroid(res, random_bounded_affine_permutation(n, rng), deep)
    res.notes["exhaustive"] = exhaustive
    res.notes["sampled"] = samples * len(sizes) if samples else 0
    return res


def _record_positroid(res: SuiteResult, p: AffinePermutation, deep: bool) -> None:
    res.checked += 1
    bad = check_positroid(p, deep)
    if bad:
        res.fail(",".join(bad), window=list(p.window))


def minors_stay_positroids(samples: int = 500, seed: int = 0, n_max: int = 8) -> SuiteResult:
    res = SuiteResult("positroid-minors")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        n = int(rng.integers(2, n_max + 1))
        p = random_bounded_affine_permutation(n, rng)
        M = positroid(p)
        S = int(rng.integers(0, 1 << n))
        res.checked += 1
        if not (is_positroid(M.restrict(S)) and is_positroid(M.contract(S))):
            res.fail("minor", window=list(p.window), S=list(_bits.elements(S)))
    return res


# -- s polynomial -------------------------------------------------------------
def suite_svals(n_max: int = 6, samples: int = 200, seed: int = 0) -> SuiteResult:
    res = SuiteResult("svals")
    for M in binary_corpus(n_max):
        _check_s(res, M)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        _check_s(res, random_matroid(n_max + 1, rng))
    return res


def _check_s(res: SuiteResult, M: Matroid) -> None:
    res.checked += 1
    s = s_poly(M)
    if ec_from_s(s) != ec(M):
        res.fail("ec-from-s", matroid=_mj(M))
    swapped = {(b, a, c): v for (a, b, c), v in s.terms.items()}
    if s_poly(M.dual()).terms != swapped:
        res.fail("dual-symmetry", matroid=_mj(M))
    t = tutte(M)
    if any(v < 0 for v in t.terms.values()) or t(1, 1) != len(M.bases()):
        res.fail("tutte", matroid=_mj(M))


# -- valuation -----------------------------------------------------------------
def suite_valuation(witness: SubdivisionWitness) -> SuiteResult:
    res = SuiteResult("valuation", checked=1)
    report = check_valuation(witness)
    res.notes.update(report.as_dict())
    if not report.passed:
        res.fail("valuation", witness=witness_to_json(witness), report=report.as_dict())
    return res
