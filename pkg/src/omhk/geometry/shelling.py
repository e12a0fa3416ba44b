"""Line shellings of rational polytopes and ridge simplices.

A directed line through an interior point crosses every facet
hyperplane once; ordering the facets by crossing parameter (outgoing
side first, then the incoming side, both ascending) shells the
boundary.  The ridge simplex construction places a small simplex
across the first two shelled facets; its supporting hyperplanes other
than those two all contain the line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..ratlinalg import dot, nullspace, primitive, rank, vscale, vsub
from .polytope import Polytope, Vec


@dataclass(frozen=True)
class LineShelling:
    point: Vec
    direction: Vec
    order: Tuple[int, ...]         # facet indices, shelling order
    params: Tuple[Fraction, ...]   # crossing parameter per facet


def line_shelling(P: Polytope, point: Sequence, direction: Sequence) -> LineShelling:
    """Shelling order of P's facets along the line point + t*direction.

    Requires the point strictly interior and the line in general
    position: not parallel to any facet hyperplane, with pairwise
    distinct crossing parameters.
    """
    p0 = tuple(Fraction(x) for x in point)
    u = tuple(Fraction(x) for x in direction)
    if len(p0) != P.dim or len(u) != P.dim or not any(u):
        raise ValueError("bad line")
    ts: List[Fraction] = []
    for f in P.facets:
        margin = dot(f.normal, p0) - f.offset
        if margin <= 0:
            raise ValueError("line base point is not strictly interior")
        speed = dot(f.normal, u)
        if speed == 0:
            raise ValueError("line is parallel to a facet hyperplane")
        ts.append(-margin / speed)
    if len(set(ts)) != len(ts):
        raise ValueError("two facet hyperplanes cross at the same parameter")
    pos = sorted((t, i) for i, t in enumerate(ts) if t > 0)
    neg = sorted((t, i) for i, t in enumerate(ts) if t < 0)
    order = tuple(i for _, i in pos) + tuple(i for _, i in neg)
    if len(order) != len(P.facets):
        raise ValueError("a crossing parameter vanished")
    return LineShelling(p0, u, order, tuple(ts))


@dataclass(frozen=True)
class RidgeSimplex:
    """Simplex spanning the first two shelled facets.

    apex_a and apex_b are the line's crossing points with those facet
    hyperplanes, base holds d-1 points in the relative interior of the
    shared ridge, and planes holds the d-1 hyperplanes (normal, offset)
    through the base facets and both apexes.  Every plane contains the
    shelling line.
    """

    facet_a: int
    facet_b: int
    apex_a: Vec
    apex_b: Vec
    base: Tuple[Vec, ...]
    planes: Tuple[Tuple[Vec, Fraction], ...]


def _hyperplane(points: Sequence[Vec], dim: int) -> Optional[Tuple[Vec, Fraction]]:
    base = points[0]
    rows = [vsub(p, base) for p in points[1:]]
    ns = nullspace(rows, dim)
    if len(ns) != 1:
        return None
    n = tuple(Fraction(x) for x in primitive(ns[0]))
    return n, dot(n, base)


def ridge_simplex(P: Polytope, sh: LineShelling, attempts: int = 40) -> RidgeSimplex:
    """Build the simplex across the first two facets of the shelling.

    Base points come from a deterministic weight schedule over the
    ridge's vertices; the schedule advances until the points are
    affinely independent.  Raises ValueError when the first two facets
    are not adjacent or no attempt yields a simplex.
    """
    d = P.dim
    a, b = sh.order[0], sh.order[1]
    fa, fb = P.facets[a], P.facets[b]
    ridge = sorted(fa.incident & fb.incident)
    if len(ridge) < d - 1:
        raise ValueError("first two shelled facets are not adjacent")
    rpts = [P.vertices[i] for i in ridge]
    if rank([vsub(p, rpts[0]) for p in rpts[1:]]) != d - 2:
        raise ValueError("shared face of the first two facets is not a ridge")
    va = tuple(p + sh.params[a] * q for p, q in zip(sh.point, sh.direction))
    vb = tuple(p + sh.params[b] * q for p, q in zip(sh.point, sh.direction))

    m = len(rpts)
    base: Optional[List[Vec]] = None
    for k in range(attempts):
        cand: List[Vec] = []
        for j in range(d - 1):
            ws = [Fraction(1)] * m
            ws[(j + k) % m] += m + k
            tot = sum(ws)
            cand.append(tuple(
                sum(w * p[t] for w, p in zip(ws, rpts)) / tot
                for t in range(d)))
        if len(set(cand)) != d - 1:
            continue
        if d == 2 or rank([vsub(p, cand[0]) for p in cand[1:]]) == d - 2:
            base = cand
            break
    if base is None:
        raise ValueError("no affinely independent ridge points found")

    simplex = [va, vb] + base
    if rank([vsub(p, simplex[0]) for p in simplex[1:]]) != d:
        raise ValueError("apexes and ridge points are affinely dependent")

    planes: List[Tuple[Vec, Fraction]] = []
    for j in range(d - 1):
        pts = [va, vb] + [p for t, p in enumerate(base) if t != j]
        hp = _hyperplane(pts, d)
        if hp is None:
            raise ValueError("degenerate simplex hyperplane")
        n, off = hp
        if dot(n, sh.direction) != 0:
            raise ValueError("simplex hyperplane does not contain the line")
        planes.append((n, off))
    if rank([n for n, _ in planes]) != d - 1:
        raise ValueError("simplex hyperplane normals are dependent")

    for i, f in enumerate(P.facets):
        if i in (a, b):
            continue
        sides = [dot(f.normal, p) - f.offset for p in simplex]
        if not all(s > 0 for s in sides):
            raise ValueError("a facet hyperplane cuts the ridge simplex")
    return RidgeSimplex(a, b, va, vb, tuple(base), tuple(planes))
