"""Exception types raised across the package."""
from __future__ import annotations


class MatroidError(ValueError):
    """Base class for invalid matroid-related input."""


class AxiomViolation(MatroidError):
    """A rank table or basis family breaks a matroid axiom.

    ``axiom`` is one of ``"empty-rank"``, ``"unit-increase"``,
    ``"exchange"`` (rank axioms) or ``"nonempty"``, ``"antichain"``,
    ``"basis-exchange"`` (basis axioms).  ``witness`` holds the offending
    subsets as tuples of 1-based elements.
    """

    def __init__(self, axiom: str, witness: tuple = ()):
        self.axiom = axiom
        self.witness = witness
        shown = ", ".join(str(w) for w in witness)
        super().__init__(f"{axiom} axiom fails at {shown}" if witness else f"{axiom} axiom fails")


class InvalidPresentation(MatroidError):
    """A line presentation has two lines sharing two or more points."""


class SizeLimitError(MatroidError):
    """Ground set too large for an operation that materialises 2**n data."""


class InconsistentRanks(MatroidError):
    """Cyclic interval ranks do not generate a matroid reproducing them."""


class MalformedMatrix(MatroidError):
    """A cyclic rank matrix does not yield a bounded affine permutation."""


class DimensionMismatch(MatroidError):
    """A subdivision witness asserts a wrong polytope dimension."""


class GroundSetMismatch(MatroidError):
    """A subdivision witness mixes matroids on different ground sets."""


class InvalidWitness(MatroidError):
    """A subdivision face has a basis that is not a basis of the parent."""
