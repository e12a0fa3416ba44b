"""Pure-numpy kernel lane.

Every function here has a twin in numba_impl with identical semantics;
parity between the lanes is enforced by tests.  Codes are uint64 sign
vectors (low 32 bits: plus mask, high 32: minus mask), arrays are kept
sorted and duplicate-free.
"""

from __future__ import annotations

import numpy as np

LOW32 = np.uint64(0xFFFFFFFF)
U32 = np.uint64(32)

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_U1 = np.uint64(1)
_U2 = np.uint64(2)
_U4 = np.uint64(4)
_U56 = np.uint64(56)


def popcount64(a: np.ndarray) -> np.ndarray:
    a = a - ((a >> _U1) & _M1)
    a = (a & _M2) + ((a >> _U2) & _M2)
    a = (a + (a >> _U4)) & _M4
    return ((a * _H01) >> _U56).astype(np.int64)


def _member_sorted(sorted_arr: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Boolean mask: which queries occur in sorted_arr."""
    if sorted_arr.size == 0:
        return np.zeros(queries.shape, dtype=bool)
    idx = np.searchsorted(sorted_arr, queries)
    idx = np.minimum(idx, sorted_arr.size - 1)
    return sorted_arr[idx] == queries


def span_codes(cocs: np.ndarray, budget: int) -> np.ndarray:
    """Close a cocircuit set under composition; sorted codes including zero."""
    cocs = np.unique(cocs.astype(np.uint64))
    cp = cocs & LOW32
    cm = cocs >> U32
    total = np.zeros(1, dtype=np.uint64)
    frontier = total
    while frontier.size:
        px = (frontier & LOW32)[:, None]
        mx = (frontier >> U32)[:, None]
        free = ~(px | mx)
        p = px | (cp[None, :] & free)
        m = mx | (cm[None, :] & free)
        cand = np.unique(p | (m << U32))
        new = cand[~_member_sorted(total, cand)]
        if total.size + new.size > budget:
            raise ValueError("covector closure exceeded budget")
        total = np.union1d(total, new)
        frontier = new
    return total


def _conform_rows(p: np.ndarray, m: np.ndarray, pi, mi) -> np.ndarray:
    """Mask over rows: row conforms to (pi, mi)."""
    return ((p & ~pi) == 0) & ((m & ~mi) == 0)


def minimal_nonzero(codes: np.ndarray) -> np.ndarray:
    nz = codes[codes != 0]
    p = nz & LOW32
    m = nz >> U32
    keep = np.ones(nz.size, dtype=bool)
    for i in range(nz.size):
        below = _conform_rows(p, m, p[i], m[i])
        below[i] = False
        if below.any():
            keep[i] = False
    return nz[keep]


def maximal_codes(codes: np.ndarray) -> np.ndarray:
    nz = codes[codes != 0]
    p = nz & LOW32
    m = nz >> U32
    keep = np.ones(nz.size, dtype=bool)
    for i in range(nz.size):
        above = ((p[i] & ~p) == 0) & ((m[i] & ~m) == 0)
        above[i] = False
        if above.any():
            keep[i] = False
    return nz[keep]


def lattice_height(codes: np.ndarray) -> int:
    """Longest chain length in the conformal order on nonzero covectors."""
    nz = codes[codes != 0]
    if nz.size == 0:
        return 0
    order = np.argsort(popcount64((nz & LOW32) | (nz >> U32)), kind="stable")
    nz = nz[order]
    p = nz & LOW32
    m = nz >> U32
    h = np.ones(nz.size, dtype=np.int64)
    for i in range(1, nz.size):
        below = _conform_rows(p[:i], m[:i], p[i], m[i])
        below &= nz[:i] != nz[i]
        if below.any():
            h[i] = 1 + h[:i][below].max()
    return int(h.max())


def edge_covectors(codes: np.ndarray, cocs: np.ndarray):
    """Covectors with exactly two nonzero strict faces, both cocircuits.

    Returns (edges, enda, endb): edge codes plus endpoint indices into the
    sorted cocircuit array, enda < endb.
    """
    nz = codes[codes != 0]
    p = nz & LOW32
    m = nz >> U32
    edges = []
    enda = []
    endb = []
    for i in range(nz.size):
        below = _conform_rows(p, m, p[i], m[i])
        below[i] = False
        idx = np.nonzero(below)[0]
        if idx.size != 2:
            continue
        lo = np.searchsorted(cocs, nz[idx])
        ok = (lo < cocs.size) & (cocs[np.minimum(lo, cocs.size - 1)] == nz[idx])
        if not ok.all():
            continue
        a, b = int(lo[0]), int(lo[1])
        if a > b:
            a, b = b, a
        edges.append(nz[i])
        enda.append(a)
        endb.append(b)
    return (
        np.array(edges, dtype=np.uint64),
        np.array(enda, dtype=np.int64),
        np.array(endb, dtype=np.int64),
    )


def count_simplicial_topes(codes: np.ndarray, topes: np.ndarray, r: int) -> int:
    """Topes whose face interval has exactly r maximal proper faces."""
    nz = codes[codes != 0]
    p = nz & LOW32
    m = nz >> U32
    count = 0
    for t in topes:
        pt = t & LOW32
        mt = t >> U32
        below = _conform_rows(p, m, pt, mt)
        below &= nz != t
        faces = nz[below]
        fp = faces & LOW32
        fm = faces >> U32
        nfacets = 0
        for j in range(faces.size):
            above = ((fp[j] & ~fp) == 0) & ((fm[j] & ~fm) == 0)
            above[j] = False
            if not above.any():
                nfacets += 1
        if nfacets == r:
            count += 1
    return count


def _pm_r(codes: np.ndarray, rmask):
    r = np.uint64(rmask)
    p = codes & LOW32
    m = codes >> U32
    return (p & ~r) | (m & r), (m & ~r) | (p & r)


def program_sweep(
    n,
    rank,
    rmasks,
    coc_codes,
    phi,
    coc_off,
    edge_codes,
    enda,
    endb,
    edge_off,
    wb,
    topes,
    all_codes,
    loops_mask,
    coloops_mask,
):
    """Status of every (reorientation, g, f) program on one matroid.

    255: skipped (g == f); 0: not proper; 1: proper, enough disjoint
    paths; 2: proper, too few; 3: proper but no unique source/sink
    (structural invariant broken, caller raises).
    """
    from ..digraph import Digraph, max_disjoint_paths, unique_source_sink

    d = int(rank) - 1
    nR = rmasks.size
    status = np.full((nR, n, n), 255, dtype=np.uint8)
    full = np.uint64((1 << n) - 1)
    loops_i = int(loops_mask)
    coloops_i = int(coloops_mask)
    for ri in range(nR):
        r = rmasks[ri]
        pt, mt = _pm_r(topes, r)
        pa, ma = _pm_r(all_codes, r)
        supa = pa | ma
        for fi in range(n):
            others = [gi for gi in range(n) if gi != fi]
            if (coloops_i >> fi) & 1 or coc_off[fi + 1] == coc_off[fi]:
                for gi in others:
                    status[ri, gi, fi] = 0
                continue
            c0, c1 = int(coc_off[fi]), int(coc_off[fi + 1])
            e0, e1 = int(edge_off[fi]), int(edge_off[fi + 1])
            pc, mc = _pm_r(coc_codes[c0:c1], r)
            pe, me = _pm_r(edge_codes[e0:e1], r)
            la, lb = enda[e0:e1], endb[e0:e1]
            wbf = wb[e0:e1]
            phif = phi[c0:c1]
            sf = -1 if (int(r) >> fi) & 1 else 1
            fbit = np.uint64(1 << fi)
            fsup = full & ~fbit
            for gi in others:
                if (loops_i >> gi) & 1:
                    status[ri, gi, fi] = 0
                    continue
                gb = np.uint64(1 << gi)
                outside = full & ~gb & ~fbit
                if not bool((((pt & gb) != 0) & ((mt & outside) == 0)).any()):
                    status[ri, gi, fi] = 0
                    continue
                ray = (
                    ((supa & gb) == 0)
                    & ((ma & outside) == 0)
                    & ((supa & fsup) != 0)
                )
                if bool(ray.any()):
                    status[ri, gi, fi] = 0
                    continue
                gplus = (pc & gb) != 0
                ing = gplus[la] & gplus[lb]
                fease = ing & ((me & outside) == 0)
                w = wbf[:, gi]
                dirs = np.zeros(w.size, dtype=np.int64)
                has = w >= 0
                dirs[has] = phif[w[has]]
                dirs *= sf
                if bool((fease & (dirs == 0)).any()):
                    status[ri, gi, fi] = 0
                    continue
                if d <= 0:
                    status[ri, gi, fi] = 1
                    continue
                feasv = gplus & ((mc & outside) == 0)
                vids = np.nonzero(feasv)[0]
                arcs = []
                for k in np.nonzero(fease)[0]:
                    a, b = int(la[k]), int(lb[k])
                    arcs.append((a, b) if dirs[k] > 0 else (b, a))
                g = Digraph(vids.tolist(), arcs)
                ok, s, t = unique_source_sink(g)
                if not ok:
                    status[ri, gi, fi] = 3
                    continue
                if s == t:
                    status[ri, gi, fi] = 2
                    continue
                k = max_disjoint_paths(g, s, t)
                status[ri, gi, fi] = 1 if k >= d else 2
    return status
