"""Exact rational polytopes, objective digraphs on their skeletons, and
the constructions that turn a sensitive instance into a coline fixation
failing the disjoint-path bound."""

from __future__ import annotations

from .factory import (
    CatalogPolytope,
    ConstructionError,
    FlipConstruction,
    build_non_hkstar,
    six_vertex_catalog,
    small_polytopes,
)
from .lp import (
    MarkedLP,
    NotGeneric,
    TruncationResult,
    all_orientations_insensitive,
    find_sensitive_objective,
    is_sensitive,
    lp_digraph,
    objective_shells,
    pyramid_lp,
    sensitive_after_truncation,
)
from .polytope import (
    Facet,
    Polytope,
    face_lattice_key,
    hull_facets,
    polar_dual,
    pyramid_polytope,
    simple_vertices,
    truncate,
)
from .shelling import LineShelling, RidgeSimplex, line_shelling, ridge_simplex

__all__ = [
    "CatalogPolytope",
    "ConstructionError",
    "Facet",
    "FlipConstruction",
    "LineShelling",
    "MarkedLP",
    "NotGeneric",
    "Polytope",
    "RidgeSimplex",
    "TruncationResult",
    "all_orientations_insensitive",
    "build_non_hkstar",
    "face_lattice_key",
    "find_sensitive_objective",
    "hull_facets",
    "is_sensitive",
    "line_shelling",
    "lp_digraph",
    "objective_shells",
    "polar_dual",
    "pyramid_lp",
    "pyramid_polytope",
    "ridge_simplex",
    "sensitive_after_truncation",
    "simple_vertices",
    "six_vertex_catalog",
    "small_polytopes",
    "truncate",
]
