"""Exact rational polytopes in low dimension.

Facets use inward normals: every vertex x satisfies n . x >= b, with
equality exactly on the facet's incident vertices.  All arithmetic is
Fraction; no floats enter any predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

from ..ratlinalg import dot, fvec, nullspace, primitive, rank, vsub

Vec = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Facet:
    normal: Vec
    offset: Fraction
    incident: frozenset  # vertex indices on the hyperplane


@dataclass(frozen=True)
class Polytope:
    vertices: Tuple[Vec, ...]
    facets: Tuple[Facet, ...]
    edges: Tuple[Tuple[int, int], ...]  # index pairs, i < j
    dim: int

    def neighbors(self, i: int) -> Tuple[int, ...]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return tuple(out)

    def facet_vertex_sets(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(sorted(f.incident)) for f in self.facets)

    def f_vector(self) -> Tuple[int, int, int]:
        return (len(self.vertices), len(self.edges), len(self.facets))


def hull_facets(points: Sequence[Sequence], expect_dim: Optional[int] = None) -> Polytope:
    """Brute force facet enumeration over d-subsets; points must be the
    vertex set of a full-dimensional polytope in their ambient space."""
    pts: List[Vec] = [tuple(Fraction(x) for x in p) for p in points]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("mixed ambient dimensions")
    if expect_dim is not None and d != expect_dim:
        raise ValueError(f"expected ambient dimension {expect_dim}, got {d}")
    if len(pts) < d + 1:
        raise ValueError("too few points for a full-dimensional polytope")
    diffs = [vsub(p, pts[0]) for p in pts[1:]]
    if rank(diffs) != d:
        raise ValueError(f"points span dimension {rank(diffs)} < {d}")

    seen: Dict[Tuple, Facet] = {}
    for sub in combinations(range(len(pts)), d):
        base = pts[sub[0]]
        rows = [vsub(pts[i], base) for i in sub[1:]]
        ns = nullspace(rows, d)
        if len(ns) != 1:
            continue  # degenerate subset or under-determined hyperplane
        n = tuple(Fraction(x) for x in primitive(ns[0]))
        b = dot(n, base)
        sides = [dot(n, p) - b for p in pts]
        if all(s >= 0 for s in sides):
            pass
        elif all(s <= 0 for s in sides):
            n = tuple(-x for x in n)
            b = -b
            sides = [-s for s in sides]
        else:
            continue
        key = (n, b)
        if key not in seen:
            inc = frozenset(i for i, s in enumerate(sides) if s == 0)
            seen[key] = Facet(n, b, inc)

    facets = tuple(seen.values())
    if not facets:
        raise ValueError("no facets found; input is not a polytope vertex set")
    on_count = [0] * len(pts)
    for f in facets:
        for i in f.incident:
            on_count[i] += 1
    for i, c in enumerate(on_count):
        if c < d:
            raise ValueError(f"point {i} lies on {c} < {d} facets: not a vertex")

    edges = []
    for i, j in combinations(range(len(pts)), 2):
        shared = [f.normal for f in facets if i in f.incident and j in f.incident]
        if len(shared) >= d - 1 and rank(shared) == d - 1:
            edges.append((i, j))
    return Polytope(tuple(pts), facets, tuple(edges), d)


def simple_vertices(P: Polytope) -> Tuple[int, ...]:
    """Vertices with exactly dim neighbors."""
    return tuple(i for i in range(len(P.vertices))
                 if len(P.neighbors(i)) == P.dim)


def _truncation_frame(P: Polytope, v: int, rot: int = 0):
    """Deterministic neighbor roles and cut points for truncating v.

    rot picks which neighbor stays on the cut plane: the sorted
    neighbor triple is rotated by rot before assigning (v1, v2, v3).
    The choice changes the combinatorics of the cut polytope, since v3
    ends up adjacent to both cut points and v1, v2 to one each.
    """
    if P.dim != 3:
        raise ValueError("truncation is defined for 3-polytopes")
    nb = sorted(P.neighbors(v), key=lambda i: P.vertices[i])
    if len(nb) != 3:
        raise ValueError(f"vertex {v} has {len(nb)} neighbors; need a simple vertex")
    if rot not in (0, 1, 2):
        raise ValueError("rot must be 0, 1 or 2")
    v1, v2, v3 = nb[rot:] + nb[:rot]
    half = Fraction(1, 2)
    u1 = tuple((a + b) * half for a, b in zip(P.vertices[v], P.vertices[v1]))
    u2 = tuple((a + b) * half for a, b in zip(P.vertices[v], P.vertices[v2]))
    return v1, v2, v3, u1, u2


def truncate(P: Polytope, v: int, rot: int = 0) -> Polytope:
    """Cut off simple vertex v by the plane through the midpoints of two
    of its edges and through the third neighbor; rot picks the split."""
    v1, v2, v3, u1, u2 = _truncation_frame(P, v, rot)
    base = fvec(u1)
    rows = [vsub(fvec(u2), base), vsub(P.vertices[v3], base)]
    ns = nullspace(rows, 3)
    if len(ns) != 1:
        raise ValueError("cut points are collinear; cannot take the plane")
    m = tuple(Fraction(x) for x in primitive(ns[0]))
    c = dot(m, base)
    sv = dot(m, P.vertices[v]) - c
    if sv == 0:
        raise ValueError("cut plane passes through the vertex being removed")
    if sv > 0:
        m = tuple(-x for x in m)
        c = -c
    for i, p in enumerate(P.vertices):
        if i in (v, v3):
            continue
        if dot(m, p) - c <= 0:
            raise ValueError(f"cut plane does not separate only vertex {v}")
    pts = [p for i, p in enumerate(P.vertices) if i != v] + [u1, u2]
    Q = hull_facets(pts)
    if len(Q.vertices) != len(P.vertices) + 1:
        raise ValueError("truncation did not add exactly one vertex")
    loc = {p: i for i, p in enumerate(Q.vertices)}
    expect = [
        (P.vertices[v1], u1),
        (P.vertices[v2], u2),
        (P.vertices[v3], u1),
        (P.vertices[v3], u2),
        (u1, u2),
    ]
    eset = set(Q.edges)
    for a, b in expect:
        ia, ib = loc[a], loc[b]
        if (min(ia, ib), max(ia, ib)) not in eset:
            raise ValueError("expected truncation edge missing")
    return Q


def pyramid_polytope(P: Polytope, apex_base: Optional[Sequence] = None) -> Polytope:
    """Convex hull of P x {0} with one apex at height 1."""
    n = len(P.vertices)
    if apex_base is None:
        apex_base = tuple(sum(p[k] for p in P.vertices) / n for k in range(P.dim))
    apex = tuple(Fraction(x) for x in apex_base) + (Fraction(1),)
    pts = [p + (Fraction(0),) for p in P.vertices] + [apex]
    Q = hull_facets(pts)
    if len(Q.vertices) != n + 1 or Q.dim != P.dim + 1:
        raise ValueError("pyramid construction failed")
    return Q


def polar_dual(P: Polytope, center: Optional[Sequence] = None) -> Polytope:
    """Dual polytope: one vertex per facet, after translating the chosen
    interior point (default: vertex centroid) to the origin."""
    n = len(P.vertices)
    if center is None:
        center = tuple(sum(p[k] for p in P.vertices) / n for k in range(P.dim))
    c0 = tuple(Fraction(x) for x in center)
    duals = []
    for f in P.facets:
        b = f.offset - dot(f.normal, c0)
        if b >= 0:
            raise ValueError("center is not strictly interior")
        duals.append(tuple(x / b for x in f.normal))
    Q = hull_facets(duals)
    if len(Q.vertices) != len(P.facets) or len(Q.facets) != n:
        raise ValueError("polar dual has unexpected face counts")
    return Q


def face_lattice_key(P: Polytope) -> Tuple:
    """Canonical form of the vertex-facet incidences under relabeling.

    Brute force over vertex permutations; intended for tiny polytopes
    (the catalogs here have at most 8 vertices).
    """
    nv = len(P.vertices)
    incs = [tuple(sorted(f.incident)) for f in P.facets]
    best = None
    for perm in permutations(range(nv)):
        relab = tuple(sorted(tuple(sorted(perm[i] for i in inc)) for inc in incs))
        if best is None or relab < best:
            best = relab
    return best
