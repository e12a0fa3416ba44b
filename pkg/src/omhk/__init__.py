"""Holt-Klee style tests for oriented matroids.

Covector-level oriented matroid machinery, objective digraphs of matroid
programs, dual shelling digraphs of coline fixations, a census driver,
and an exact-arithmetic construction kit that builds examples failing
the dual condition.
"""

from __future__ import annotations

from .chirotope import (
    Chirotope,
    chirotope_from_points,
    colex_rank,
    colex_subsets,
    parse_chirotope,
)
from .matroid import (
    OrientedMatroid,
    ValidationReport,
    covector_span,
    rank_of,
    validate_cocircuit_axioms,
)
from .signvec import SignVector, compose, conforms

__version__ = "0.1.0"

__all__ = [
    "Chirotope",
    "OrientedMatroid",
    "SignVector",
    "ValidationReport",
    "chirotope_from_points",
    "colex_rank",
    "colex_subsets",
    "compose",
    "conforms",
    "covector_span",
    "parse_chirotope",
    "rank_of",
    "validate_cocircuit_axioms",
    "__version__",
]
