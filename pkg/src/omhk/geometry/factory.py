"""Constructions that manufacture rank-r coline fixations failing the
disjoint-path bound, starting from small polytopes.

The pipeline: pick a six-vertex seed with a sensitive objective, grow
it by vertex cuts (adds vertices, keeps dimension) and pyramids (adds
one vertex and one dimension), dualize, shell the dual along the
objective line, span a simplex across the first two shelled facets,
lift everything to a vector configuration, and flip the simplex basis.
The flipped chirotope's coline shelling swaps the first two facets,
which reverses one digraph arc and breaks the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..chirotope import Chirotope, chirotope_from_points
from ..matroid import OrientedMatroid
from ..ratlinalg import dot
from ..shellings import coline_shelling, is_hkstar_fixation, is_proper_fixation
from .lp import MarkedLP, find_sensitive_objective, lp_digraph, pyramid_lp, \
    sensitive_after_truncation
from .polytope import Polytope, hull_facets, polar_dual, simple_vertices
from .shelling import line_shelling, ridge_simplex

Vec = Tuple[Fraction, ...]


@dataclass(frozen=True)
class CatalogPolytope:
    name: str
    polytope: Polytope
    # objective known to be sensitive on these coordinates, if any
    sensitive_hint: Optional[Tuple[int, ...]]


_SIX_VERTEX = (
    ("prism",
     ((24, 12, 0), (0, 6, 0), (0, -12, 0), (24, 11, 1), (8, 4, 4), (14, -5, 7)),
     (0, -1, 0)),
    ("pentagonal_pyramid",
     ((0, 0, 0), (2, 0, 0), (3, 2, 0), (1, 4, 0), (-1, 2, 0), (1, 2, 3)),
     None),
    ("double_quad",
     ((0, 0, 0), (8, 0, 0), (4, 8, 0), (-6, 6, 0), (11, -16, 4), (2, -12, 8)),
     (-1, -2, 0)),
    ("single_quad_a",
     ((-5, 4, 0), (-5, 0, 0), (1, -1, 0), (-2, -1, 0), (-1, -4, 2), (4, -5, 1)),
     (-1, -4, 0)),
    ("single_quad_b",
     ((-1, -1, 0), (-3, 2, 0), (-5, 4, 0), (-2, -2, 0), (2, -5, 5), (1, 0, 1)),
     (1, -2, -3)),
    ("octahedron",
     ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)),
     None),
    ("stacked_simplex",
     ((4, 1, 6), (-4, -1, 4), (6, -1, 3), (5, -4, -4), (3, 0, 5), (-1, 3, 0)),
     None),
)


def six_vertex_catalog() -> Tuple[CatalogPolytope, ...]:
    """The seven combinatorial types of six-vertex 3-polytopes, in
    rational coordinates, with a known sensitive objective where one
    exists on these coordinates."""
    return tuple(CatalogPolytope(name, hull_facets(pts), hint)
                 for name, pts, hint in _SIX_VERTEX)


def small_polytopes() -> Tuple[Tuple[str, Polytope], ...]:
    """The 3-simplex and both five-vertex 3-polytopes."""
    return (
        ("simplex", hull_facets([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])),
        ("square_pyramid", hull_facets([(0, 0, 0), (2, 0, 0), (0, 2, 0),
                                        (2, 2, 0), (1, 1, 1)])),
        ("bipyramid", hull_facets([(1, 0, 0), (0, 1, 0), (-1, -1, 0),
                                   (0, 0, 1), (0, 0, -1)])),
    )


class ConstructionError(RuntimeError):
    """A pipeline stage failed its verification; the stage is named."""


def _seed_sensitive(max_norm: int) -> MarkedLP:
    for entry in six_vertex_catalog():
        seeds = [entry.sensitive_hint] if entry.sensitive_hint else []
        m = find_sensitive_objective(entry.polytope, max_norm=max_norm, seeds=seeds)
        if m is not None:
            return m
    raise ConstructionError("seed stage: no catalog polytope admits a "
                            "sensitive objective within the budget")


def _grow_by_truncation(gamma: MarkedLP, max_norm: int) -> MarkedLP:
    failures = []
    for v in simple_vertices(gamma.polytope):
        res = sensitive_after_truncation(gamma, v, max_norm=max_norm)
        if res.geometric is not None:
            return res.geometric
        failures.append(f"vertex {v}: {res.warning}")
    raise ConstructionError("truncation stage: " + "; ".join(failures))


def _dual_with_nonzero_values(Q: Polytope, c: Vec,
                              attempts: int = 40) -> Tuple[Polytope, Vec]:
    """Polar dual about a weighted centroid giving every vertex a
    nonzero centered objective value."""
    n = len(Q.vertices)
    for k in range(attempts):
        ws = [Fraction(1)] * n
        ws[k % n] += k
        tot = sum(ws)
        center = tuple(sum(w * v[t] for w, v in zip(ws, Q.vertices)) / tot
                       for t in range(Q.dim))
        if any(dot(c, v) == dot(c, center) for v in Q.vertices):
            continue
        return polar_dual(Q, center), center
    raise ConstructionError("dual stage: no centering gave nonzero values")


def _facet_vertex_map(P: Polytope, Q: Polytope) -> Dict[int, int]:
    """Match each facet of the dual P to the Q-vertex it came from via
    the incidence pattern: dual point i lies on dual facet k exactly
    when Q-facet i contains the matched Q-vertex."""
    want = {}
    for j in range(len(Q.vertices)):
        pat = frozenset(i for i, f in enumerate(Q.facets) if j in f.incident)
        want[pat] = j
    out = {}
    for k, f in enumerate(P.facets):
        pat = frozenset(f.incident)
        if pat not in want:
            raise ConstructionError("dual stage: facet incidences do not "
                                    "match any primal vertex")
        out[k] = want[pat]
    if len(set(out.values())) != len(out):
        raise ConstructionError("dual stage: facet-vertex match not bijective")
    return out


def _swap_first(seq: Tuple[int, ...]) -> Tuple[int, ...]:
    return (seq[1], seq[0]) + seq[2:]


def _align(seq: Tuple[int, ...], first_pair: set) -> Optional[Tuple[int, ...]]:
    if set(seq[:2]) == first_pair:
        return seq
    rev = tuple(reversed(seq))
    if set(rev[:2]) == first_pair:
        return rev
    return None


@dataclass(frozen=True)
class FlipConstruction:
    rank: int
    size: int
    chirotope: Chirotope            # the flipped, bound-violating one
    base_chirotope: Chirotope       # before the flip
    coline: Tuple[int, ...]
    flipped_basis: Tuple[int, ...]
    polytope: Polytope              # the grown primal Q
    objective: Vec
    shelling_before: Tuple[int, ...]
    shelling_after: Tuple[int, ...]
    disjoint_path_count: int
    required_d: int

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "size": self.size,
            "chirotope": "".join("+-0"[(1, -1, 0).index(s)]
                                 for s in self.chirotope.signs),
            "base_chirotope": "".join("+-0"[(1, -1, 0).index(s)]
                                      for s in self.base_chirotope.signs),
            "coline": list(self.coline),
            "flipped_basis": list(self.flipped_basis),
            "vertices": [[str(x) for x in v] for v in self.polytope.vertices],
            "objective": [str(x) for x in self.objective],
            "shelling_before": list(self.shelling_before),
            "shelling_after": list(self.shelling_after),
            "disjoint_path_count": self.disjoint_path_count,
            "required_d": self.required_d,
        }


def build_non_hkstar(rank: int, size: int, max_norm: int = 6) -> FlipConstruction:
    """Rank-r chirotope on `size` elements whose coline fixation fails
    the disjoint-path bound, built from a sensitive objective.

    Requires rank >= 4 and size >= 2*rank.  Every stage re-verifies its
    own output and raises ConstructionError on mismatch.
    """
    r, n = rank, size
    if r < 4:
        raise ValueError("rank must be at least 4")
    if n < 2 * r:
        raise ValueError("size must be at least twice the rank")
    d = r - 1
    n_dual_facets = n - d + 1      # vertices of the grown primal
    n_start = n - 2 * r + 6        # vertices after the 3-dim growth phase

    gamma = _seed_sensitive(max_norm)
    for _ in range(n_start - 6):
        gamma = _grow_by_truncation(gamma, max_norm)
    for _ in range(d - 3):
        gamma = pyramid_lp(gamma)
    Q = gamma.polytope
    if len(Q.vertices) != n_dual_facets or Q.dim != d:
        raise ConstructionError("growth stage: wrong vertex count or dimension")

    c = gamma.objective
    P, center = _dual_with_nonzero_values(Q, c)
    fmap = _facet_vertex_map(P, Q)
    origin = tuple(Fraction(0) for _ in range(d))
    u = tuple(-x for x in c)
    sh = line_shelling(P, origin, u)

    by_value = sorted(range(len(Q.vertices)), key=lambda j: dot(c, Q.vertices[j]))
    if [fmap[k] for k in sh.order] != by_value:
        raise ConstructionError("shelling stage: facet order does not follow "
                                "the objective order of the primal vertices")
    if fmap[sh.order[0]] != gamma.source or fmap[sh.order[1]] != gamma.marked:
        raise ConstructionError("shelling stage: first two facets are not the "
                                "marked pair")

    rs = ridge_simplex(P, sh)
    vecs: List[Tuple[Fraction, ...]] = [f.normal + (-f.offset,) for f in P.facets]
    vecs.extend(nrm + (-off,) for nrm, off in rs.planes)
    chi = chirotope_from_points(vecs)
    if chi.n != n or chi.r != r:
        raise ConstructionError("lift stage: configuration has wrong size or rank")

    M = OrientedMatroid.from_chirotope(chi)
    coline = frozenset(range(n_dual_facets + 1, n + 1))
    if coline not in M.colines():
        raise ConstructionError("lift stage: simplex elements are not a coline")

    expected = tuple(k + 1 for k in sh.order)
    cs = _align(coline_shelling(M, coline), set(expected[:2]))
    if cs is None or cs != expected:
        raise ConstructionError("lift stage: coline shelling disagrees with "
                                "the line shelling")
    base_cert = is_hkstar_fixation(M, coline)
    if not base_cert.hkstar:
        raise ConstructionError("lift stage: the unflipped fixation already "
                                "fails the bound")

    basis = tuple(sorted({expected[0], expected[1]} | set(coline)))
    chi2 = chi.mutate(basis)
    M2 = OrientedMatroid.from_chirotope(chi2)
    rep = M2.validate()
    if not rep.ok:
        raise ConstructionError("flip stage: flipped cocircuits fail the "
                                "axioms: " + "; ".join(rep.errors))
    if coline not in M2.colines():
        raise ConstructionError("flip stage: coline lost by the flip")
    cs2 = _align(coline_shelling(M2, coline), set(expected[:2]))
    if cs2 is None or cs2 != _swap_first(expected):
        raise ConstructionError("flip stage: shelling did not swap exactly "
                                "the first two facets")
    if not is_proper_fixation(M2, coline):
        raise ConstructionError("flip stage: fixation is no longer proper")
    cert = is_hkstar_fixation(M2, coline)
    if cert.hkstar:
        raise ConstructionError("flip stage: bound still holds after the flip")

    return FlipConstruction(
        rank=r, size=n, chirotope=chi2, base_chirotope=chi,
        coline=tuple(sorted(coline)), flipped_basis=basis,
        polytope=Q, objective=c,
        shelling_before=expected, shelling_after=_swap_first(expected),
        disjoint_path_count=cert.disjoint_path_count,
        required_d=cert.required_d)
