"""Matroid programs and their objective digraphs.

A program on an oriented matroid N picks an infinity element g and an
objective f.  Vertices of the objective digraph are cocircuits of the
f-deletion with a positive g entry; arcs are the 1-cells joining two
such vertices.  Each 1-cell lies on a unique line (the cells vanishing
on its coline); the arc points toward the end of that line whose g-zero
infinity cocircuit lifts to a positive f sign, and is non-oriented when
that lift is zero (the objective is constant along the line).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import _bits, kernels
from .digraph import Digraph, HoltKleeReport, holt_klee, is_acyclic, unique_source_sink
from .matroid import OrientedMatroid
from .signvec import SignVector

LOW32 = np.uint64(0xFFFFFFFF)
U32 = np.uint64(32)


class ProgramFrame:
    """Per-(matroid, objective) data shared by every g and reorientation.

    Cocircuits and 1-cells of the f-deletion are kept in the parent bit
    space with the f position zeroed.  phi holds the f sign of the
    unique covector of N restricting to each cocircuit.  wb[k, g] is the
    frame index of the first g-zero cocircuit on edge k's line, walking
    from the edge toward its second stored endpoint (-1 when the whole
    line vanishes on g).
    """

    def __init__(self, om: OrientedMatroid, f: int):
        if f in om.coloops():
            raise ValueError(
                f"objective {f} is a coloop; deleting it drops the rank, "
                "so no objective digraph exists"
            )
        self.om = om
        self.f = f
        self.fpos = om.position(f)
        n = om.n
        fbit = np.uint64((1 << self.fpos) | (1 << (self.fpos + 32)))
        lf = np.unique(om.codes & ~fbit)
        lane = kernels.active()
        self.cocs = lane.minimal_nonzero(lf)
        self.edges, self.enda, self.endb = lane.edge_covectors(lf, self.cocs)
        self.phi = self._lift_signs(om, self.cocs, self.fpos)
        self.wb = self._walk_table(n)

    @staticmethod
    def _lift_signs(om: OrientedMatroid, cocs: np.ndarray, fpos: int) -> np.ndarray:
        """f sign of the unique covector of N restricting to each cocircuit."""
        phi = np.zeros(cocs.size, dtype=np.int8)
        pbit = np.uint64(1 << fpos)
        mbit = np.uint64(1 << (fpos + 32))
        for i, y in enumerate(cocs):
            hits = []
            for cand, s in ((y, 0), (y | pbit, 1), (y | mbit, -1)):
                j = int(np.searchsorted(om.codes, cand))
                if j < om.codes.size and om.codes[j] == cand:
                    hits.append(s)
            if len(hits) != 1:
                raise ValueError(
                    f"covector lift is not unique for a cocircuit ({len(hits)} found)"
                )
            phi[i] = hits[0]
        return phi

    def _walk_table(self, n: int) -> np.ndarray:
        full = (1 << n) - 1
        wb = np.full((self.edges.size, n), -1, dtype=np.int32)
        if self.edges.size == 0:
            return wb
        zmask = np.array(
            [~_bits.support_mask(int(c)) & full & ~(1 << self.fpos) for c in self.edges],
            dtype=np.int64,
        )
        coc_z = np.array(
            [~_bits.support_mask(int(c)) & full & ~(1 << self.fpos) for c in self.cocs],
            dtype=np.int64,
        )
        by_line: Dict[int, List[int]] = {}
        for k, z in enumerate(zmask):
            by_line.setdefault(int(z), []).append(k)
        for t, edge_ids in sorted(by_line.items()):
            # cocircuits on the line: zero set contains the coline
            on = [i for i in range(self.cocs.size) if (coc_z[i] & t) == t]
            incid: Dict[int, List[int]] = {i: [] for i in on}
            for k in edge_ids:
                incid[int(self.enda[k])].append(k)
                incid[int(self.endb[k])].append(k)
            for i, ks in incid.items():
                if len(ks) != 2:
                    raise ValueError("line structure broken: cocircuit not on 2 edges")
            if len(edge_ids) != len(on):
                raise ValueError("line structure broken: edge/vertex count mismatch")
            # walk the circle
            k0 = edge_ids[0]
            order_v = [int(self.enda[k0]), int(self.endb[k0])]
            order_e = [k0]
            while True:
                v = order_v[-1]
                k1, k2 = incid[v]
                nxt = k2 if k1 == order_e[-1] else k1
                if nxt == k0:
                    break
                order_e.append(nxt)
                a, b = int(self.enda[nxt]), int(self.endb[nxt])
                order_v.append(b if a == v else a)
            kcnt = len(order_e)
            for pos, k in enumerate(order_e):
                # vertices from the endb side outward: walk forward if the
                # stored b endpoint is the next vertex in the cycle
                fwd = order_v[(pos + 1) % kcnt]
                if int(self.endb[k]) == fwd:
                    seq = [order_v[(pos + 1 + s) % kcnt] for s in range(kcnt)]
                else:
                    seq = [order_v[(pos - s) % kcnt] for s in range(kcnt)]
                for g in range(n):
                    if g == self.fpos:
                        continue
                    gb = 1 << g
                    for v in seq:
                        if coc_z[v] & gb:
                            wb[k, g] = v
                            break
        return wb


def _frame(om: OrientedMatroid, f: int) -> ProgramFrame:
    key = ("frame", f)
    if key not in om._cache:
        om._cache[key] = ProgramFrame(om, f)
    return om._cache[key]  # type: ignore[return-value]


def _pm(codes: np.ndarray, rmask: int = 0):
    r = np.uint64(rmask)
    p = codes & LOW32
    m = codes >> U32
    return (p & ~r) | (m & r), (m & ~r) | (p & r)


def _restricted_vec(om: OrientedMatroid, code: int, fpos: int) -> SignVector:
    signs = _bits.unpack(int(code), om.n)
    return SignVector(signs[:fpos] + signs[fpos + 1 :])


@dataclass
class ProgramView:
    """Runtime masks for one (N, g, f) program in the base orientation."""

    om: OrientedMatroid
    g: int
    f: int
    frame: ProgramFrame
    gpos: int
    outside: int  # all positions except g and f

    @classmethod
    def build(cls, om: OrientedMatroid, g: int, f: int) -> "ProgramView":
        if g == f:
            raise ValueError("infinity element and objective must differ")
        gpos, fpos = om.position(g), om.position(f)
        full = (1 << om.n) - 1
        return cls(om, g, f, _frame(om, f), gpos, full & ~(1 << gpos) & ~(1 << fpos))

    # vertex/edge filters (no reorientation: callers reorient om first)

    def vertex_mask(self) -> np.ndarray:
        p, _ = _pm(self.frame.cocs)
        return (p & np.uint64(1 << self.gpos)) != 0

    def feasible_vertex_mask(self) -> np.ndarray:
        p, m = _pm(self.frame.cocs)
        return ((p & np.uint64(1 << self.gpos)) != 0) & ((m & np.uint64(self.outside)) == 0)

    def edge_dirs(self) -> np.ndarray:
        """+1: enda->endb, -1: reverse, 0: non-oriented, per frame edge."""
        w = self.frame.wb[:, self.gpos]
        d = np.zeros(self.frame.edges.size, dtype=np.int8)
        has = w >= 0
        d[has] = self.frame.phi[w[has]]
        return d

    def edge_in_graph_mask(self) -> np.ndarray:
        v = self.vertex_mask()
        return v[self.frame.enda] & v[self.frame.endb]

    def feasible_edge_mask(self) -> np.ndarray:
        p, m = _pm(self.frame.edges)
        feas = (m & np.uint64(self.outside)) == 0
        return self.edge_in_graph_mask() & feas


def _vertex_labels(view: ProgramView) -> List[str]:
    return [
        str(_restricted_vec(view.om, int(c), view.frame.fpos)) for c in view.frame.cocs
    ]


def program_graph(
    om: OrientedMatroid, g: int, f: int, feasible_only: bool = False
) -> Digraph:
    """The objective digraph; restricted to the feasible cells on request.

    Vertices are sign strings of the f-deletion cocircuits (ground order,
    f omitted).  Non-oriented edges carry no arc.
    """
    view = ProgramView.build(om, g, f)
    labels = _vertex_labels(view)
    vmask = view.feasible_vertex_mask() if feasible_only else view.vertex_mask()
    emask = view.feasible_edge_mask() if feasible_only else view.edge_in_graph_mask()
    dirs = view.edge_dirs()
    verts = [labels[i] for i in np.nonzero(vmask)[0]]
    arcs = []
    for k in np.nonzero(emask)[0]:
        a, b = int(view.frame.enda[k]), int(view.frame.endb[k])
        if dirs[k] > 0:
            arcs.append((labels[a], labels[b]))
        elif dirs[k] < 0:
            arcs.append((labels[b], labels[a]))
    return Digraph(verts, arcs)


def feasible_region(om: OrientedMatroid, g: int, f: int) -> Tuple[SignVector, ...]:
    """All cells of the f-deletion with g positive and no negative entry."""
    view = ProgramView.build(om, g, f)
    fbit = np.uint64((1 << view.frame.fpos) | (1 << (view.frame.fpos + 32)))
    lf = np.unique(om.codes & ~fbit)
    p, m = _pm(lf)
    sel = ((p & np.uint64(1 << view.gpos)) != 0) & ((m & np.uint64(view.outside)) == 0)
    return tuple(_restricted_vec(om, int(c), view.frame.fpos) for c in lf[sel])


def is_bounded(om: OrientedMatroid, g: int, f: int) -> bool:
    """Nonempty feasible region with no unbounded feasible direction."""
    view = ProgramView.build(om, g, f)
    if not feasible_region(om, g, f):
        return False
    p, m = _pm(om.codes)
    gb = np.uint64(1 << view.gpos)
    fsup = np.uint64((1 << om.n) - 1) & ~np.uint64(1 << view.frame.fpos)
    ray = (
        (((p | m) & gb) == 0)
        & ((m & np.uint64(view.outside)) == 0)
        & (((p | m) & fsup) != 0)
    )
    return not bool(ray.any())


def is_generic_objective(om: OrientedMatroid, g: int, f: int) -> bool:
    """No feasible 1-cell lies on a line along which the objective is flat."""
    view = ProgramView.build(om, g, f)
    emask = view.feasible_edge_mask()
    return not bool((view.edge_dirs()[emask] == 0).any())


def _has_feasible_tope(om: OrientedMatroid, view: ProgramView) -> bool:
    p, m = _pm(om._tope_codes())
    gb = np.uint64(1 << view.gpos)
    sel = ((p & gb) != 0) & ((m & np.uint64(view.outside)) == 0)
    return bool(sel.any())


def is_proper_program(om: OrientedMatroid, g: int, f: int) -> bool:
    """Full-dimensional bounded feasible set, generic objective, g and f usable."""
    if g == f:
        raise ValueError("infinity element and objective must differ")
    if g in om.loops() or f in om.loops() or f in om.coloops():
        return False
    view = ProgramView.build(om, g, f)
    return (
        _has_feasible_tope(om, view)
        and is_bounded(om, g, f)
        and is_generic_objective(om, g, f)
    )


def is_euclidean_program(om: OrientedMatroid, g: int, f: int) -> bool:
    """No directed cycle in the full objective digraph."""
    return is_acyclic(program_graph(om, g, f, feasible_only=False))


def holt_klee_report(om: OrientedMatroid, g: int, f: int) -> HoltKleeReport:
    if not is_proper_program(om, g, f):
        raise ValueError(f"program (g={g}, f={f}) is not proper")
    gph = program_graph(om, g, f, feasible_only=True)
    ok, _, _ = unique_source_sink(gph)
    if not ok:
        raise RuntimeError(
            "proper program digraph lacks a unique source or sink; "
            "this violates a structural invariant"
        )
    return holt_klee(gph, om.rank - 1)


def is_hk_program(om: OrientedMatroid, g: int, f: int) -> bool:
    """Proper program whose feasible digraph has rank-1 disjoint paths."""
    return holt_klee_report(om, g, f).holds


def program_report(om: OrientedMatroid, g: int, f: int) -> dict:
    """Flat summary of one program, JSON-ready."""
    if g in om.loops() or f in om.loops():
        return {"g": g, "f": f, "proper": False, "bounded": None,
                "generic": None, "euclidean": None, "hk": None,
                "degenerate": "a chosen element is a loop"}
    if f in om.coloops():
        return {"g": g, "f": f, "proper": False, "bounded": None,
                "generic": None, "euclidean": None, "hk": None,
                "degenerate": "objective f is a coloop; no level sets"}
    proper = is_proper_program(om, g, f)
    rep = {
        "g": g,
        "f": f,
        "proper": proper,
        "bounded": is_bounded(om, g, f),
        "generic": is_generic_objective(om, g, f),
        "euclidean": is_euclidean_program(om, g, f),
        "hk": None,
    }
    if proper:
        hk = holt_klee_report(om, g, f)
        rep["hk"] = hk.holds
        rep["holt_klee"] = hk.to_json()
    return rep


# -- matroid-level quantifiers ---------------------------------------------


@dataclass
class MinorDesc:
    contracted: Tuple[int, ...]
    deleted: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"contracted": list(self.contracted), "deleted": list(self.deleted)}


def minors_of_rank_at_least(
    om: OrientedMatroid, min_rank: int
) -> Iterator[Tuple[MinorDesc, OrientedMatroid]]:
    """All (contract, delete) minors with rank >= min_rank, breadth-first with
    pruning, duplicates removed; labels survive into the minors."""
    seen = set()
    base = {e: i for i, e in enumerate(om.ground)}

    def key(m: OrientedMatroid):
        return (m.ground, m.codes.tobytes())

    def deletions(root: OrientedMatroid, contracted: Tuple[int, ...]):
        stack = [((), root)]
        while stack:
            deleted, cur = stack.pop(0)
            k = key(cur)
            if k not in seen:
                seen.add(k)
                yield MinorDesc(contracted, deleted), cur
            if cur.n - 1 < min_rank:
                continue
            floor = base[deleted[-1]] if deleted else -1
            for e in cur.ground:
                if base[e] <= floor:
                    continue
                nxt = cur.delete([e])
                if nxt.rank >= min_rank:
                    stack.append((deleted + (e,), nxt))

    stack = [((), om)]
    while stack:
        contracted, cur = stack.pop(0)
        if cur.rank >= min_rank:
            yield from deletions(cur, contracted)
        floor = base[contracted[-1]] if contracted else -1
        for e in cur.ground:
            if base[e] <= floor:
                continue
            nxt = cur.contract([e])
            if nxt.rank >= min_rank:
                stack.append((contracted + (e,), nxt))


def reorientation_masks(n: int) -> np.ndarray:
    """Sign-flip masks up to global negation: lowest position stays fixed."""
    return (np.arange(1 << max(n - 1, 0), dtype=np.uint64) << np.uint64(1))


def _pack_frames(om: OrientedMatroid):
    """Concatenated per-objective frame arrays for the sweep kernels."""
    n = om.n
    coc_codes, phi, edge_codes, enda, endb, wbs = [], [], [], [], [], []
    coc_off = [0]
    edge_off = [0]
    coloops = set(om.coloops())
    for f in om.ground:
        if f in coloops:
            coc_off.append(coc_off[-1])
            edge_off.append(edge_off[-1])
            continue
        fr = _frame(om, f)
        coc_codes.append(fr.cocs)
        phi.append(fr.phi)
        edge_codes.append(fr.edges)
        enda.append(fr.enda)
        endb.append(fr.endb)
        wbs.append(fr.wb)
        coc_off.append(coc_off[-1] + fr.cocs.size)
        edge_off.append(edge_off[-1] + fr.edges.size)
    cat = lambda xs, dt: (
        np.concatenate(xs).astype(dt) if xs else np.zeros(0, dtype=dt)
    )
    return {
        "coc_codes": cat(coc_codes, np.uint64),
        "phi": cat(phi, np.int8),
        "coc_off": np.array(coc_off, dtype=np.int64),
        "edge_codes": cat(edge_codes, np.uint64),
        "enda": cat(enda, np.int64),
        "endb": cat(endb, np.int64),
        "edge_off": np.array(edge_off, dtype=np.int64),
        "wb": (
            np.concatenate(wbs, axis=0).astype(np.int32)
            if wbs
            else np.zeros((0, n), dtype=np.int32)
        ),
    }


@dataclass
class SweepResult:
    holds: bool
    witness: Optional[dict]
    programs_checked: int
    proper_programs: int
    minors_checked: int


def _loops_mask(om: OrientedMatroid) -> int:
    return om.mask_of(om.loops())


def _coloops_mask(om: OrientedMatroid) -> int:
    return om.mask_of(om.coloops())


def is_hk_matroid(om: OrientedMatroid, mode: str = "full", min_rank: int = 4) -> SweepResult:
    """Do all proper programs on reorientations of rank >= min_rank minors
    satisfy the disjoint-path condition?

    mode "quick" checks only the matroid itself in its given orientation;
    "full" quantifies over minors and reorientations.  The first failing
    program in (minor, reorientation, g, f) order becomes the witness.
    """
    if mode not in ("quick", "full"):
        raise ValueError(f"mode must be quick or full, got {mode!r}")
    lane = kernels.active()
    checked = proper = nminors = 0
    if mode == "quick":
        minors: Iterator = iter([(MinorDesc((), ()), om)])
    else:
        minors = minors_of_rank_at_least(om, min_rank)
    for desc, minor in minors:
        nminors += 1
        rmasks = (
            np.zeros(1, dtype=np.uint64)
            if mode == "quick"
            else reorientation_masks(minor.n)
        )
        packed = _pack_frames(minor)
        status = lane.program_sweep(
            minor.n,
            minor.rank,
            rmasks,
            packed["coc_codes"],
            packed["phi"],
            packed["coc_off"],
            packed["edge_codes"],
            packed["enda"],
            packed["endb"],
            packed["edge_off"],
            packed["wb"],
            minor._tope_codes(),
            minor.codes,
            np.uint64(_loops_mask(minor)),
            np.uint64(_coloops_mask(minor)),
        )
        checked += int((status != 255).sum())
        proper += int(((status == 1) | (status == 2) | (status == 3)).sum())
        if (status == 3).any():
            raise RuntimeError(
                "proper program digraph lacks a unique source or sink; "
                "this violates a structural invariant"
            )
        bad = np.argwhere(status == 2)
        if bad.size:
            ri, gi, fi = (int(x) for x in bad[0])
            rlabels = minor.labels_of_mask(int(rmasks[ri]))
            g, f = minor.ground[gi], minor.ground[fi]
            flipped = minor.reorient(rlabels) if rlabels else minor
            rep = holt_klee_report(flipped, g, f)
            if rep.holds:
                raise RuntimeError("sweep kernel and direct check disagree")
            witness = {
                "contracted": list(desc.contracted),
                "deleted": list(desc.deleted),
                "reoriented": list(rlabels),
                "g": g,
                "f": f,
                "disjoint_path_count": rep.disjoint_path_count,
                "required_d": rep.required_d,
            }
            return SweepResult(False, witness, checked, proper, nminors)
    return SweepResult(True, None, checked, proper, nminors)


def is_euclidean_matroid(om: OrientedMatroid) -> SweepResult:
    """Is every program (g, f) on the matroid itself free of directed cycles?"""
    checked = 0
    for g in om.ground:
        for f in om.ground:
            if g == f:
                continue
            checked += 1
            if not is_euclidean_program(om, g, f):
                witness = {"g": g, "f": f}
                return SweepResult(False, witness, checked, 0, 1)
    return SweepResult(True, None, checked, 0, 1)
