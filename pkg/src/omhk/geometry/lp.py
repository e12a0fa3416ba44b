"""Linear programs on rational polytopes and their edge orientations.

A generic objective orients every polytope edge toward the larger value.
The resulting digraph is acyclic, has unique sources and sinks on every
face, and satisfies the d-connectivity bound between its global source
and sink.  A marked instance singles out the source s and one of its
out-neighbors w; it is sensitive when reversing the arc (s, w) destroys
that bound while keeping the orientation acyclic with unique face sinks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..digraph import Digraph, holt_klee, is_acyclic, unique_source_sink
from ..ratlinalg import dot
from .polytope import Polytope, _truncation_frame, truncate

Vec = Tuple[Fraction, ...]


class NotGeneric(ValueError):
    """Objective ties on an edge or repeats a vertex value."""


@dataclass(frozen=True)
class MarkedLP:
    """LP digraph with the two smallest vertices marked.

    source is the minimizer, marked the vertex with the second smallest
    objective value; the pair is always an edge, and reversing it keeps
    the orientation acyclic with unique face sources and sinks.
    """

    polytope: Polytope
    objective: Vec
    digraph: Digraph
    source: int
    marked: int
    values: Tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return self.polytope.dim


def objective_values(P: Polytope, c: Sequence) -> Tuple[Fraction, ...]:
    cc = tuple(Fraction(x) for x in c)
    if len(cc) != P.dim:
        raise ValueError("objective dimension mismatch")
    return tuple(dot(cc, v) for v in P.vertices)


def is_generic_objective(P: Polytope, c: Sequence) -> bool:
    vals = objective_values(P, c)
    return len(set(vals)) == len(vals)


def lp_digraph(P: Polytope, c: Sequence) -> MarkedLP:
    """Orient each edge toward the larger objective value.

    Raises NotGeneric on ties.  The marked vertex is the second
    smallest; it always neighbors the source.
    """
    vals = objective_values(P, c)
    if len(set(vals)) != len(vals):
        raise NotGeneric("objective takes equal values on two vertices")
    arcs = []
    for i, j in P.edges:
        arcs.append((i, j) if vals[i] < vals[j] else (j, i))
    g = Digraph(range(len(P.vertices)), arcs)
    ok, s, t = unique_source_sink(g)
    if not ok or not is_acyclic(g):
        raise RuntimeError("objective orientation is not an acyclic USO")
    for f in P.facets:
        sub = _induced(g, f.incident)
        fok, _, _ = unique_source_sink(sub)
        if not fok:
            raise RuntimeError("a facet has several sources or sinks")
    order = sorted(range(len(vals)), key=lambda i: vals[i])
    marked = order[1]
    if marked not in g.out_neighbors(s):
        raise RuntimeError("second smallest vertex does not neighbor the source")
    return MarkedLP(P, tuple(Fraction(x) for x in c), g, s, marked, vals)


def _induced(g: Digraph, keep: Iterable[int]) -> Digraph:
    ks = set(keep)
    return Digraph(sorted(ks), [(a, b) for a, b in g.arcs if a in ks and b in ks])


def _flip(g: Digraph, a: int, b: int) -> Digraph:
    arcs = [(y, x) if (x, y) == (a, b) else (x, y) for x, y in g.arcs]
    return Digraph(g.vertices, arcs)


def _faces_uso(g: Digraph, faces: Iterable[Iterable[int]]) -> bool:
    for f in faces:
        ok, _, _ = unique_source_sink(_induced(g, f))
        if not ok:
            return False
    return True


def is_sensitive(m: MarkedLP) -> bool:
    """Does reversing the marked arc break the d-path bound?

    A marking only counts when the reversal stays inside the class:
    acyclic, unique global source and sink, unique source and sink on
    every facet.  Reversals that leave the class are not sensitive.
    """
    flipped = _flip(m.digraph, m.source, m.marked)
    if not is_acyclic(flipped):
        return False
    ok, _, _ = unique_source_sink(flipped)
    faces = [f.incident for f in m.polytope.facets]
    if not ok or not _faces_uso(flipped, faces):
        return False
    return not holt_klee(flipped, m.dim).holds


def objective_shells(dim: int, max_norm: int) -> Iterable[Tuple[int, ...]]:
    """All primitive integer objectives with max-norm k, for k ascending.

    Deterministic: shells grow outward, lexicographic inside a shell.
    """
    from math import gcd

    for k in range(1, max_norm + 1):
        for c in product(range(-k, k + 1), repeat=dim):
            if max(abs(x) for x in c) != k:
                continue
            g = 0
            for x in c:
                g = gcd(g, abs(x))
            if g == 1:
                yield c


def find_sensitive_objective(P: Polytope, max_norm: int = 6,
                             seeds: Iterable[Sequence] = ()) -> Optional[MarkedLP]:
    """First integer objective (seeds, then growing lattice shells) that
    admits a sensitive marking; None when the budget is exhausted."""
    cands: List[Tuple] = [tuple(x for x in s) for s in seeds]
    cands.extend(objective_shells(P.dim, max_norm))
    for c in cands:
        if not any(c):
            continue
        if not is_generic_objective(P, c):
            continue
        m = lp_digraph(P, c)
        if is_sensitive(m):
            return m
    return None


def all_orientations_insensitive(P: Polytope, use_faces: bool = False) -> int:
    """Count acyclic unique-sink orientations of P's graph that admit a
    sensitive marking.  Zero means every source arc can be reversed
    without losing the d-path bound."""
    from ..digraph import enumerate_acyclic_uso

    faces = P.facet_vertex_sets() if use_faces else None
    d = P.dim
    bad = 0
    for g in enumerate_acyclic_uso(range(len(P.vertices)), P.edges, faces=faces):
        ok, s, _ = unique_source_sink(g)
        if not ok:
            continue
        for w in sorted(g.out_neighbors(s)):
            flipped = _flip(g, s, w)
            if not is_acyclic(flipped):
                continue
            fok, _, _ = unique_source_sink(flipped)
            if not fok:
                continue
            if faces is not None and not _faces_uso(flipped, faces):
                continue
            if not holt_klee(flipped, d).holds:
                bad += 1
                break
    return bad


@dataclass(frozen=True)
class TruncationResult:
    """Outcome of pushing a sensitive instance through a vertex cut."""

    polytope: Polytope
    surgery_arcs: Tuple[Tuple[int, int], ...]
    surgery_source: int
    surgery_marked: int
    geometric: Optional[MarkedLP]
    warning: Optional[str]


def _vertex_map(P: Polytope, Q: Polytope, dropped: int) -> Dict[int, int]:
    loc = {p: i for i, p in enumerate(Q.vertices)}
    out = {}
    for i, p in enumerate(P.vertices):
        if i != dropped:
            out[i] = loc[p]
    return out


def sensitive_after_truncation(m: MarkedLP, v: int,
                               max_norm: int = 6) -> TruncationResult:
    """Truncate vertex v and carry sensitivity across the cut.

    Stage one re-orients only the five edges created by the cut,
    keeping every surviving arc, and searches the 32 assignments for an
    acyclic orientation with unique face sources and sinks, satisfying
    the d-path bound, and admitting a sensitive marking.  All three cut
    frames are tried: which neighbor of v stays on the cut plane
    matters, since the marked vertex needs a cut point of its own when
    v is the source.  Failure across all frames is reported as a
    RuntimeError since some cut at a simple vertex always preserves
    sensitivity.  Stage two looks for an objective realizing a
    sensitive instance on the cut polytope; a miss only downgrades the
    result to combinatorial-with-warning.
    """
    P = m.polytope
    for rot in (0, 1, 2):
        found = _cut_surgery(m, v, rot)
        if found is not None:
            Q, arcs, s, marked = found
            geo = find_sensitive_objective(
                Q, max_norm=max_norm,
                seeds=_perturbed_seeds(m.objective))
            warning = None
            if geo is None:
                warning = ("no objective realizing a sensitive instance was "
                           f"found within max-norm {max_norm}")
            return TruncationResult(Q, arcs, s, marked, geo, warning)
    raise RuntimeError(
        "no orientation of the five cut edges preserves sensitivity in any "
        "cut frame; this contradicts the vertex-cut invariant and should "
        "be reported")


def _cut_surgery(m: MarkedLP, v: int, rot: int):
    """One cut frame: 32 orientations of the new edges, first sensitive
    hit wins.  Returns (Q, arcs, source, marked) or None."""
    P = m.polytope
    v1, v2, v3, u1, u2 = _truncation_frame(P, v, rot)
    Q = truncate(P, v, rot)
    vmap = _vertex_map(P, Q, v)
    loc = {p: i for i, p in enumerate(Q.vertices)}
    iu1, iu2 = loc[u1], loc[u2]
    new_edges = [
        (vmap[v1], iu1),
        (vmap[v2], iu2),
        (vmap[v3], iu1),
        (vmap[v3], iu2),
        (iu1, iu2),
    ]
    inherited = [(vmap[a], vmap[b]) for a, b in m.digraph.arcs
                 if a != v and b != v]
    expected = {tuple(sorted(e)) for e in new_edges}
    expected.update(tuple(sorted(e)) for e in inherited)
    if expected != {tuple(e) for e in Q.edges}:
        raise RuntimeError("cut polytope graph does not match the surgery frame")

    faces = [f.incident for f in Q.facets]
    d = Q.dim
    verts = range(len(Q.vertices))
    for bits in range(32):
        arcs = list(inherited)
        for k, (a, b) in enumerate(new_edges):
            arcs.append((a, b) if (bits >> k) & 1 == 0 else (b, a))
        g = Digraph(verts, arcs)
        if not is_acyclic(g):
            continue
        ok, s, _ = unique_source_sink(g)
        if not ok or not _faces_uso(g, faces):
            continue
        if not holt_klee(g, d).holds:
            continue
        for w in sorted(g.out_neighbors(s)):
            flipped = _flip(g, s, w)
            if not is_acyclic(flipped):
                continue
            fok, _, _ = unique_source_sink(flipped)
            if not fok or not _faces_uso(flipped, faces):
                continue
            if not holt_klee(flipped, d).holds:
                return Q, tuple(arcs), s, w
    return None


def _perturbed_seeds(c: Vec) -> List[Tuple[Fraction, ...]]:
    """The inherited objective first, then unit nudges of its double."""
    seeds = [c]
    base = tuple(2 * x for x in c)
    for i in range(len(c)):
        for dlt in (1, -1):
            s = list(base)
            s[i] += dlt
            seeds.append(tuple(s))
    return seeds


def pyramid_lp(m: MarkedLP) -> MarkedLP:
    """Lift a sensitive instance to the pyramid one dimension up.

    The apex objective value is pinned strictly between the marked
    vertex's value and the next one above it, so after reversing the
    marked arc the apex feeds the new source instead of starving it,
    and sensitivity is preserved.
    """
    from .polytope import pyramid_polytope

    P = m.polytope
    Q = pyramid_polytope(P)
    apex = Q.vertices[-1]
    lo = m.values[m.marked]
    above = [x for x in m.values if x > lo]
    target = (lo + min(above)) / 2 if above else lo + 1
    c_last = target - dot(m.objective, apex[:-1])
    c = m.objective + (c_last,)
    lifted = lp_digraph(Q, c)
    if lifted.source != m.source or lifted.marked != m.marked:
        raise RuntimeError("pyramid lift moved the marked pair")
    if not is_sensitive(lifted):
        raise RuntimeError("pyramid lift lost sensitivity")
    return lifted
