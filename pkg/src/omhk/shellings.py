"""Coline fixations and their dual shelling digraphs.

Fixing a coline T of an oriented matroid singles out the line of cells
vanishing on T: a circle of cocircuit pairs.  When the coline is generic
(each remaining element vanishes on exactly one pair) and some 1-cell of
the line is nonnegative outside T, walking the circle away from that
cell meets the remaining elements one at a time; the order of first
sign flips is the shelling order.  Arcs join earlier to later elements
whenever a nonnegative ridge cocircuit vanishes on both; the resulting
digraph is tested for rank-1 disjoint paths, as the objective digraphs
are.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from . import _bits
from .digraph import Digraph, holt_klee, max_disjoint_paths, unique_source_sink
from .matroid import OrientedMatroid
from .programs import MinorDesc, minors_of_rank_at_least, reorientation_masks
from .signvec import SignVector


def _pm_int(code: int, rmask: int) -> Tuple[int, int]:
    p = code & 0xFFFFFFFF
    m = code >> 32
    return (p & ~rmask) | (m & rmask), (m & ~rmask) | (p & rmask)


class FixationFrame:
    """Reorientation-independent data for one (matroid, coline) pair."""

    def __init__(self, om: OrientedMatroid, coline: Iterable[int]):
        self.om = om
        self.T = tuple(sorted(coline))
        self.tmask = om.mask_of(self.T)
        full = (1 << om.n) - 1
        self.outside = full & ~self.tmask

        edges, _, _ = om._edge_data()
        zero = lambda c: ~_bits.support_mask(int(c)) & full
        self.interior_edges = [int(c) for c in edges if zero(int(c)) == self.tmask]
        if not self.interior_edges:
            raise ValueError(f"{self.T} is not a coline: no 1-cell vanishes on it")

        cocs = om._cocircuit_codes()
        self.line: List[Tuple[int, int]] = []  # (code, extra zero position)
        self.generic = True
        for c in cocs:
            z = zero(int(c))
            if z & self.tmask == self.tmask:
                extra = z & self.outside
                if _bits.popcount(extra) != 1:
                    self.generic = False
                    self.line.append((int(c), -1))
                else:
                    self.line.append((int(c), _bits.positions_of_mask(extra)[0]))
        hit = {}
        for _, e in self.line:
            hit[e] = hit.get(e, 0) + 1
        opos = set(_bits.positions_of_mask(self.outside))
        if self.generic:
            self.generic = set(hit) == opos and all(v == 2 for v in hit.values())

        # the outside elements must span: a nonzero covector vanishing on
        # all of them is a lineality direction of the region being shelled
        ofull = np.uint64(self.outside | (self.outside << 32))
        self.pointed = not bool(((om.codes & ofull) == 0)[om.codes != 0].any())

        # facet and ridge witnesses are covectors of any dimension: zero at
        # the named elements, nonzero at the rest of the outside, free on T
        self.facet_cands: Dict[int, List[int]] = {e: [] for e in opos}
        self.ridge_cands: Dict[Tuple[int, int], List[int]] = {}
        for c in om.codes:
            zo = zero(int(c)) & self.outside
            k = _bits.popcount(zo)
            if k == 1:
                self.facet_cands[_bits.positions_of_mask(zo)[0]].append(int(c))
            elif k == 2:
                a, b = _bits.positions_of_mask(zo)
                self.ridge_cands.setdefault((a, b), []).append(int(c))

    # -- reorientation-dependent tests -----------------------------------

    def interior_cell(self, rmask: int = 0) -> Optional[int]:
        found = None
        for c in self.interior_edges:
            _, m = _pm_int(c, rmask)
            if m & self.outside == 0:
                if found is not None:
                    raise RuntimeError("two disjoint nonnegative cells on one line")
                found = c
        return found

    def faces_are_facets(self, rmask: int = 0) -> bool:
        for e, cands in self.facet_cands.items():
            ok = False
            for c in cands:
                _, m = _pm_int(c, rmask)
                if m & self.outside & ~(1 << e) == 0:
                    ok = True
                    break
            if not ok:
                return False
        return True

    def ridge(self, e1: int, e2: int, rmask: int = 0) -> bool:
        a, b = min(e1, e2), max(e1, e2)
        for c in self.ridge_cands.get((a, b), ()):
            _, m = _pm_int(c, rmask)
            if m & self.outside == 0:
                return True
        return False

    def order(self, rmask: int = 0) -> Tuple[int, ...]:
        """Shelling order as positions; canonical end first; staircase checked."""
        reps: Dict[int, List[Tuple[int, int]]] = {}
        starts = []
        for c, e in self.line:
            _, m = _pm_int(c, rmask)
            mo = m & self.outside
            reps.setdefault(e, []).append((c, mo))
            if mo == 0:
                starts.append((c, e))
        if len(starts) != 2:
            raise RuntimeError(
                f"expected 2 nonnegative line cocircuits, found {len(starts)}"
            )

        def build(e1: int) -> Tuple[int, ...]:
            chosen = []
            for e, members in reps.items():
                if e == e1:
                    continue
                picks = [
                    (c, mo) for c, mo in members if mo & (1 << e1)
                ]
                if len(picks) != 1:
                    raise RuntimeError("line pair not split by the start element")
                chosen.append((picks[0][1], e))
            chosen.sort(key=lambda t: _bits.popcount(t[0]))
            seq = [e1] + [e for _, e in chosen]
            acc = 0
            for i, (mo, e) in enumerate(chosen):
                acc |= 1 << seq[i]
                if mo != acc:
                    raise RuntimeError("sign staircase broken along the line")
            return tuple(seq)

        o1 = build(starts[0][1])
        o2 = build(starts[1][1])
        if o2 != o1[::-1]:
            raise RuntimeError("the two walk directions disagree")
        lab = self.om.ground
        return o1 if lab[o1[0]] < lab[o2[0]] else o2


def _frame(om: OrientedMatroid, coline: Iterable[int]) -> FixationFrame:
    key = ("coline", tuple(sorted(coline)))
    if key not in om._cache:
        om._cache[key] = FixationFrame(om, coline)
    return om._cache[key]  # type: ignore[return-value]


def supercell(om: OrientedMatroid, coline: Iterable[int]) -> Optional[SignVector]:
    """The nonnegative 1-cell vanishing exactly on the coline, if any."""
    c = _frame(om, coline).interior_cell()
    return None if c is None else SignVector.from_code(c, om.n)


def is_generic_coline(om: OrientedMatroid, coline: Iterable[int]) -> bool:
    """Every element off the coline vanishes on exactly one cocircuit pair."""
    return _frame(om, coline).generic


def is_proper_fixation(om: OrientedMatroid, coline: Iterable[int]) -> bool:
    """Generic coline whose complement spans, with a nonnegative interior
    cell and a facet witness for every element outside the coline."""
    fr = _frame(om, coline)
    return (
        fr.generic
        and fr.pointed
        and fr.interior_cell() is not None
        and fr.faces_are_facets()
    )


def coline_shelling(om: OrientedMatroid, coline: Iterable[int]) -> Tuple[int, ...]:
    """Element labels in shelling order (canonical direction)."""
    fr = _frame(om, coline)
    if not is_proper_fixation(om, coline):
        raise ValueError(f"fixation at {tuple(sorted(coline))} is not proper")
    return tuple(om.ground[p] for p in fr.order())


def facet_adjacency(
    om: OrientedMatroid, coline: Iterable[int]
) -> Tuple[FrozenSet[int], ...]:
    """Unordered label pairs joined by a nonnegative ridge cocircuit."""
    fr = _frame(om, coline)
    out = []
    for a, b in combinations(sorted(_bits.positions_of_mask(fr.outside)), 2):
        if fr.ridge(a, b):
            out.append(frozenset((om.ground[a], om.ground[b])))
    return tuple(out)


def shelling_digraph(om: OrientedMatroid, coline: Iterable[int]) -> Digraph:
    """Arcs run from earlier to later shelling positions across each ridge."""
    fr = _frame(om, coline)
    order = coline_shelling(om, coline)
    posn = {e: i for i, e in enumerate(order)}
    arcs = []
    for pair in facet_adjacency(om, coline):
        a, b = sorted(pair, key=posn.__getitem__)
        arcs.append((a, b))
    return Digraph(order, arcs)


@dataclass
class FixationCertificate:
    coline: Tuple[int, ...]
    shelling_order: Tuple[int, ...]
    arcs: Tuple[Tuple[int, int], ...]
    source: int
    sink: int
    disjoint_path_count: int
    required_d: int
    hkstar: bool
    chirotope: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "chirotope": self.chirotope,
            "T": list(self.coline),
            "shelling_order": list(self.shelling_order),
            "arcs": [list(a) for a in self.arcs],
            "source": self.source,
            "sink": self.sink,
            "disjoint_path_count": self.disjoint_path_count,
            "required_d": self.required_d,
            "hkstar": self.hkstar,
        }

    def __str__(self) -> str:
        return json.dumps(self.to_json())


def is_hkstar_fixation(
    om: OrientedMatroid,
    coline: Iterable[int],
    chirotope: Optional[str] = None,
) -> FixationCertificate:
    """Shelling digraph of a proper fixation, tested for rank-1 disjoint paths."""
    g = shelling_digraph(om, coline)
    ok, s, t = unique_source_sink(g)
    if not ok:
        raise RuntimeError(
            "shelling digraph lacks a unique source or sink; "
            "this violates a structural invariant"
        )
    d = om.rank - 1
    rep = holt_klee(g, d)
    return FixationCertificate(
        coline=tuple(sorted(coline)),
        shelling_order=tuple(g.vertices),
        arcs=tuple(g.arcs),
        source=s,
        sink=t,
        disjoint_path_count=rep.disjoint_path_count,
        required_d=d,
        hkstar=rep.holds,
        chirotope=chirotope,
    )


@dataclass
class ShellSweepResult:
    holds: bool
    witness: Optional[dict]
    fixations_checked: int
    proper_fixations: int
    minors_checked: int


def is_hkstar_matroid(om: OrientedMatroid, mode: str = "full", min_rank: int = 4) -> ShellSweepResult:
    """Do all proper fixations on reorientations of rank >= min_rank minors
    pass the shelling digraph path test?

    The first failing fixation in (minor, reorientation, coline) order is
    the witness.  mode "quick" checks the matroid itself, unreoriented.
    """
    if mode not in ("quick", "full"):
        raise ValueError(f"mode must be quick or full, got {mode!r}")
    checked = proper = nminors = 0
    if mode == "quick":
        minors = iter([(MinorDesc((), ()), om)])
    else:
        minors = minors_of_rank_at_least(om, min_rank)
    for desc, minor in minors:
        nminors += 1
        rmasks = (
            [0] if mode == "quick" else [int(x) for x in reorientation_masks(minor.n)]
        )
        colines = minor.colines()
        frames = []
        for t in colines:
            fr = _frame(minor, t)
            if fr.generic and fr.pointed:
                frames.append(fr)
        d = minor.rank - 1
        for rmask in rmasks:
            for fr in frames:
                checked += 1
                if fr.interior_cell(rmask) is None or not fr.faces_are_facets(rmask):
                    continue
                proper += 1
                order = fr.order(rmask)
                posn = {p: i for i, p in enumerate(order)}
                arcs = []
                for a, b in combinations(sorted(posn), 2):
                    if fr.ridge(a, b, rmask):
                        u, v = (a, b) if posn[a] < posn[b] else (b, a)
                        arcs.append((u, v))
                g = Digraph(order, arcs)
                ok, s, t = unique_source_sink(g)
                if not ok:
                    raise RuntimeError(
                        "shelling digraph lacks a unique source or sink; "
                        "this violates a structural invariant"
                    )
                if max_disjoint_paths(g, s, t) < d:
                    rlabels = minor.labels_of_mask(rmask)
                    flipped = minor.reorient(rlabels) if rlabels else minor
                    cert = is_hkstar_fixation(flipped, fr.T)
                    if cert.hkstar:
                        raise RuntimeError("sweep and direct check disagree")
                    witness = {
                        "contracted": list(desc.contracted),
                        "deleted": list(desc.deleted),
                        "reoriented": list(rlabels),
                        "T": list(fr.T),
                        "shelling_order": list(cert.shelling_order),
                        "disjoint_path_count": cert.disjoint_path_count,
                        "required_d": cert.required_d,
                    }
                    return ShellSweepResult(False, witness, checked, proper, nminors)
    return ShellSweepResult(True, None, checked, proper, nminors)
