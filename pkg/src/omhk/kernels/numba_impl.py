"""Numba kernel lane: njit twins of the numpy lane functions."""

from __future__ import annotations

import numba as nb
import numpy as np

LOW32 = np.uint64(0xFFFFFFFF)
U32 = np.uint64(32)


@nb.njit(nb.int64(nb.uint64), cache=True, inline="always")
def _pop64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
    )
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@nb.njit(cache=True)
def popcount64(a):
    out = np.empty(a.size, dtype=np.int64)
    for i in range(a.size):
        out[i] = _pop64(a[i])
    return out


@nb.njit(nb.boolean(nb.uint64[:], nb.uint64), cache=True, inline="always")
def _member(sorted_arr, q):
    lo = np.searchsorted(sorted_arr, q)
    return lo < sorted_arr.size and sorted_arr[lo] == q


@nb.njit(cache=True)
def span_codes(cocs, budget):
    cocs = np.unique(cocs)
    total = np.zeros(1, dtype=np.uint64)
    frontier = total
    while frontier.size > 0:
        cand = np.empty(frontier.size * cocs.size, dtype=np.uint64)
        k = 0
        for i in range(frontier.size):
            x = frontier[i]
            px = x & LOW32
            mx = x >> U32
            free = ~(px | mx)
            for j in range(cocs.size):
                c = cocs[j]
                p = px | ((c & LOW32) & free)
                m = mx | ((c >> U32) & free)
                cand[k] = p | (m << U32)
                k += 1
        cand = np.unique(cand[:k])
        new = np.empty(cand.size, dtype=np.uint64)
        k = 0
        for i in range(cand.size):
            if not _member(total, cand[i]):
                new[k] = cand[i]
                k += 1
        if total.size + k > budget:
            raise ValueError("covector closure exceeded budget")
        total = np.unique(np.concatenate((total, new[:k])))
        frontier = new[:k]
    return total


@nb.njit(nb.boolean(nb.uint64, nb.uint64, nb.uint64, nb.uint64), cache=True, inline="always")
def _conf(p, m, pi, mi):
    return (p & ~pi) == 0 and (m & ~mi) == 0


@nb.njit(cache=True)
def minimal_nonzero(codes):
    nz = codes[codes != 0]
    keep = np.ones(nz.size, dtype=np.bool_)
    for i in range(nz.size):
        pi = nz[i] & LOW32
        mi = nz[i] >> U32
        for j in range(nz.size):
            if j == i:
                continue
            if _conf(nz[j] & LOW32, nz[j] >> U32, pi, mi):
                keep[i] = False
                break
    return nz[keep]


@nb.njit(cache=True)
def maximal_codes(codes):
    nz = codes[codes != 0]
    keep = np.ones(nz.size, dtype=np.bool_)
    for i in range(nz.size):
        pi = nz[i] & LOW32
        mi = nz[i] >> U32
        for j in range(nz.size):
            if j == i:
                continue
            if _conf(pi, mi, nz[j] & LOW32, nz[j] >> U32):
                keep[i] = False
                break
    return nz[keep]


@nb.njit(cache=True)
def lattice_height(codes):
    nz = codes[codes != 0]
    if nz.size == 0:
        return 0
    pc = np.empty(nz.size, dtype=np.int64)
    for i in range(nz.size):
        pc[i] = _pop64((nz[i] & LOW32) | (nz[i] >> U32))
    order = np.argsort(pc, kind="mergesort")
    nz = nz[order]
    h = np.ones(nz.size, dtype=np.int64)
    best = np.int64(1)
    for i in range(1, nz.size):
        pi = nz[i] & LOW32
        mi = nz[i] >> U32
        hi = np.int64(1)
        for j in range(i):
            if nz[j] != nz[i] and _conf(nz[j] & LOW32, nz[j] >> U32, pi, mi):
                if h[j] + 1 > hi:
                    hi = h[j] + 1
        h[i] = hi
        if hi > best:
            best = hi
    return best


@nb.njit(cache=True)
def edge_covectors(codes, cocs):
    nz = codes[codes != 0]
    edges = np.empty(nz.size, dtype=np.uint64)
    enda = np.empty(nz.size, dtype=np.int64)
    endb = np.empty(nz.size, dtype=np.int64)
    k = 0
    for i in range(nz.size):
        pi = nz[i] & LOW32
        mi = nz[i] >> U32
        c1 = np.int64(-1)
        c2 = np.int64(-1)
        cnt = 0
        for j in range(nz.size):
            if j == i:
                continue
            if _conf(nz[j] & LOW32, nz[j] >> U32, pi, mi):
                cnt += 1
                if cnt > 2:
                    break
                lo = np.searchsorted(cocs, nz[j])
                if lo >= cocs.size or cocs[lo] != nz[j]:
                    cnt = 3
                    break
                if c1 < 0:
                    c1 = lo
                else:
                    c2 = lo
        if cnt == 2:
            a, b = c1, c2
            if a > b:
                a, b = b, a
            edges[k] = nz[i]
            enda[k] = a
            endb[k] = b
            k += 1
    return edges[:k].copy(), enda[:k].copy(), endb[:k].copy()


@nb.njit(cache=True)
def count_simplicial_topes(codes, topes, r):
    nz = codes[codes != 0]
    faces = np.empty(nz.size, dtype=np.uint64)
    count = 0
    for ti in range(topes.size):
        t = topes[ti]
        pt = t & LOW32
        mt = t >> U32
        nf = 0
        for i in range(nz.size):
            if nz[i] != t and _conf(nz[i] & LOW32, nz[i] >> U32, pt, mt):
                faces[nf] = nz[i]
                nf += 1
        nfacets = 0
        for i in range(nf):
            pi = faces[i] & LOW32
            mi = faces[i] >> U32
            ismax = True
            for j in range(nf):
                if j != i and _conf(pi, mi, faces[j] & LOW32, faces[j] >> U32):
                    ismax = False
                    break
            if ismax:
                nfacets += 1
        if nfacets == r:
            count += 1
    return count


@nb.njit(cache=True)
def _flow_at_least(capm, nn, s, t, need):
    parent = np.empty(nn, np.int64)
    q = np.empty(nn, np.int64)
    flow = 0
    while flow < need:
        for i in range(nn):
            parent[i] = -1
        parent[s] = s
        qh = 0
        qt = 1
        q[0] = s
        found = False
        while qh < qt and not found:
            u = q[qh]
            qh += 1
            for v in range(nn):
                if parent[v] < 0 and capm[u, v] > 0:
                    parent[v] = u
                    if v == t:
                        found = True
                        break
                    q[qt] = v
                    qt += 1
        if not found:
            break
        v = t
        while v != s:
            u = parent[v]
            capm[u, v] -= 1
            capm[v, u] += 1
            v = u
        flow += 1
    return flow


@nb.njit(cache=True)
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
    d = rank - 1
    nR = rmasks.size
    status = np.full((nR, n, n), 255, dtype=np.uint8)
    full = np.uint64((1 << n) - 1)
    maxnc = 0
    maxne = 0
    for fi in range(n):
        c = coc_off[fi + 1] - coc_off[fi]
        e = edge_off[fi + 1] - edge_off[fi]
        if c > maxnc:
            maxnc = c
        if e > maxne:
            maxne = e
    pc = np.empty(maxnc, np.uint64)
    mc = np.empty(maxnc, np.uint64)
    me = np.empty(maxne, np.uint64)
    dirs = np.empty(maxne, np.int64)
    vmap = np.empty(maxnc, np.int64)
    indeg = np.empty(maxnc, np.int32)
    outdeg = np.empty(maxnc, np.int32)
    arca = np.empty(maxne, np.int64)
    arcb = np.empty(maxne, np.int64)
    capm = np.zeros((2 * maxnc, 2 * maxnc), np.int32)
    nt = topes.size
    na = all_codes.size
    ptope = np.empty(nt, np.uint64)
    mtope = np.empty(nt, np.uint64)
    pall = np.empty(na, np.uint64)
    mall = np.empty(na, np.uint64)
    for ri in range(nR):
        r = rmasks[ri]
        for i in range(nt):
            p = topes[i] & LOW32
            m = topes[i] >> U32
            ptope[i] = (p & ~r) | (m & r)
            mtope[i] = (m & ~r) | (p & r)
        for i in range(na):
            p = all_codes[i] & LOW32
            m = all_codes[i] >> U32
            pall[i] = (p & ~r) | (m & r)
            mall[i] = (m & ~r) | (p & r)
        for fi in range(n):
            c0, c1 = coc_off[fi], coc_off[fi + 1]
            e0, e1 = edge_off[fi], edge_off[fi + 1]
            nc = c1 - c0
            ne = e1 - e0
            fcoloop = (coloops_mask >> np.uint64(fi)) & np.uint64(1)
            if fcoloop == 1 or nc == 0:
                for gi in range(n):
                    if gi != fi:
                        status[ri, gi, fi] = 0
                continue
            for i in range(nc):
                p = coc_codes[c0 + i] & LOW32
                m = coc_codes[c0 + i] >> U32
                pc[i] = (p & ~r) | (m & r)
                mc[i] = (m & ~r) | (p & r)
            for i in range(ne):
                p = edge_codes[e0 + i] & LOW32
                m = edge_codes[e0 + i] >> U32
                me[i] = (m & ~r) | (p & r)
            sf = np.int64(-1) if (r >> np.uint64(fi)) & np.uint64(1) else np.int64(1)
            fbit = np.uint64(1 << fi)
            fsup = full & ~fbit
            for gi in range(n):
                if gi == fi:
                    continue
                if (loops_mask >> np.uint64(gi)) & np.uint64(1):
                    status[ri, gi, fi] = 0
                    continue
                gb = np.uint64(1 << gi)
                outside = full & ~gb & ~fbit
                topeok = False
                for i in range(nt):
                    if (ptope[i] & gb) != 0 and (mtope[i] & outside) == 0:
                        topeok = True
                        break
                if not topeok:
                    status[ri, gi, fi] = 0
                    continue
                ray = False
                for i in range(na):
                    sup = pall[i] | mall[i]
                    if (sup & gb) == 0 and (mall[i] & outside) == 0 and (sup & fsup) != 0:
                        ray = True
                        break
                if ray:
                    status[ri, gi, fi] = 0
                    continue
                generic = True
                narc = 0
                for k in range(ne):
                    a = enda[e0 + k]
                    b = endb[e0 + k]
                    if (pc[a] & gb) == 0 or (pc[b] & gb) == 0:
                        continue
                    if (me[k] & outside) != 0:
                        continue
                    w = wb[e0 + k, gi]
                    dv = np.int64(0)
                    if w >= 0:
                        dv = np.int64(phi[c0 + w]) * sf
                    if dv == 0:
                        generic = False
                        break
                    if dv > 0:
                        arca[narc] = a
                        arcb[narc] = b
                    else:
                        arca[narc] = b
                        arcb[narc] = a
                    narc += 1
                if not generic:
                    status[ri, gi, fi] = 0
                    continue
                if d <= 0:
                    status[ri, gi, fi] = 1
                    continue
                nv = 0
                for i in range(nc):
                    if (pc[i] & gb) != 0 and (mc[i] & outside) == 0:
                        vmap[i] = nv
                        indeg[nv] = 0
                        outdeg[nv] = 0
                        nv += 1
                    else:
                        vmap[i] = -1
                for k in range(narc):
                    outdeg[vmap[arca[k]]] += 1
                    indeg[vmap[arcb[k]]] += 1
                nsrc = 0
                nsnk = 0
                s = -1
                t = -1
                for i in range(nv):
                    if indeg[i] == 0:
                        nsrc += 1
                        s = i
                    if outdeg[i] == 0:
                        nsnk += 1
                        t = i
                if nsrc != 1 or nsnk != 1:
                    status[ri, gi, fi] = 3
                    continue
                if s == t:
                    status[ri, gi, fi] = 2
                    continue
                nn = 2 * nv
                for i in range(nn):
                    for j in range(nn):
                        capm[i, j] = 0
                big = nv + 1
                for i in range(nv):
                    capm[2 * i, 2 * i + 1] = big if (i == s or i == t) else 1
                for k in range(narc):
                    capm[2 * vmap[arca[k]] + 1, 2 * vmap[arcb[k]]] = 1
                flow = _flow_at_least(capm, nn, 2 * s + 1, 2 * t, d)
                status[ri, gi, fi] = 1 if flow >= d else 2
    return status
