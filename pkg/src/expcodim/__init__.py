"""Expected codimension of matroids.

Rank-table matroids on ground sets {1..n}, the expected codimension ec(M)
computed over arbitrary subset families, positroid encodings through bounded
affine permutations, and the valuative polynomial s_M.
"""
from __future__ import annotations

from .ecodim import (
    Mobius,
    RemovalDelta,
    SubsetFamily,
    coeff_a,
    coeff_b,
    ec,
    ec_powerset,
    ec_with,
    flacets,
    mobius,
    removal_delta,
)
from .errors import (
    AxiomViolation,
    DimensionMismatch,
    GroundSetMismatch,
    InconsistentRanks,
    InvalidPresentation,
    InvalidWitness,
    MalformedMatrix,
    MatroidError,
    SizeLimitError,
)
from .linalg import RealizationMatrix, exact_rank
from .matroid import (
    Matroid,
    coloop,
    direct_sum,
    from_bases,
    from_matrix,
    from_rank_table,
    loop,
    rank3_from_lines,
    uniform,
)
from .positroid import (
    AffinePermutation,
    CyclicInterval,
    CyclicRankMatrix,
    EssentialPosition,
    cyclic_rank_matrix,
    ec_positroid,
    essential_set,
    from_affine_permutation,
    is_positroid,
    length,
    positroid,
    positroid_from_interval_ranks,
    to_affine_permutation,
)
from .valuative import (
    Face,
    Poly,
    SubdivisionWitness,
    ValuationReport,
    check_valuation,
    ec_from_s,
    s_poly,
    tutte,
)

__version__ = "0.1.0"
