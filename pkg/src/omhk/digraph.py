"""Finite digraphs and the source-to-sink path condition.

Vertices are arbitrary hashable labels.  The path condition asks for a
unique source, a unique sink, and at least d internally vertex-disjoint
directed paths between them, where d is supplied by the caller.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

V = Hashable


class Digraph:
    """Immutable digraph with ordered vertices and arcs."""

    def __init__(self, vertices: Iterable[V], arcs: Iterable[Tuple[V, V]]):
        self.vertices: Tuple[V, ...] = tuple(dict.fromkeys(vertices))
        vset = set(self.vertices)
        seen = dict.fromkeys(tuple(a) for a in arcs)
        self.arcs: Tuple[Tuple[V, V], ...] = tuple(seen)
        for u, v in self.arcs:
            if u not in vset or v not in vset:
                raise ValueError(f"arc ({u!r}, {v!r}) uses unknown vertex")
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
        self._out: Dict[V, List[V]] = {v: [] for v in self.vertices}
        self._in: Dict[V, List[V]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            self._out[u].append(v)
            self._in[v].append(u)

    def out_neighbors(self, v: V) -> Tuple[V, ...]:
        return tuple(self._out[v])

    def in_neighbors(self, v: V) -> Tuple[V, ...]:
        return tuple(self._in[v])

    def sources(self) -> Tuple[V, ...]:
        return tuple(v for v in self.vertices if not self._in[v])

    def sinks(self) -> Tuple[V, ...]:
        return tuple(v for v in self.vertices if not self._out[v])

    def reverse(self) -> "Digraph":
        return Digraph(self.vertices, [(v, u) for u, v in self.arcs])

    def __repr__(self) -> str:
        return f"Digraph({len(self.vertices)} vertices, {len(self.arcs)} arcs)"

    def to_json(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "arcs": [[str(u), str(v)] for u, v in self.arcs],
        }

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for u, v in self.arcs:
            lines.append(f'  "{u}" -> "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def is_acyclic(g: Digraph) -> bool:
    indeg = {v: len(g.in_neighbors(v)) for v in g.vertices}
    queue = deque(v for v in g.vertices if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in g.out_neighbors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(g.vertices)


def unique_source_sink(g: Digraph) -> Tuple[bool, Optional[V], Optional[V]]:
    """(ok, source, sink); ok only when both are unique."""
    src = g.sources()
    snk = g.sinks()
    ok = len(src) == 1 and len(snk) == 1
    return ok, src[0] if len(src) == 1 else None, snk[0] if len(snk) == 1 else None


def max_disjoint_paths(g: Digraph, s: V, t: V) -> int:
    """Maximum number of internally vertex-disjoint directed s-t paths.

    Vertex-splitting reduction to unit-capacity max flow, augmented by
    breadth-first search.  Parallel arcs collapse; an s->t arc counts as
    one path on its own.
    """
    if s == t:
        raise ValueError("source and sink must differ")
    idx = {v: i for i, v in enumerate(g.vertices)}
    n = len(g.vertices)
    # node 2i = v_in, 2i+1 = v_out; interior vertices get a unit in->out arc
    cap: Dict[Tuple[int, int], int] = {}
    big = len(g.arcs) + 1

    def add(u: int, v: int, c: int):
        cap[(u, v)] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)

    for v in g.vertices:
        i = idx[v]
        add(2 * i, 2 * i + 1, big if v in (s, t) else 1)
    for u, v in g.arcs:
        add(2 * idx[u] + 1, 2 * idx[v], 1)

    adj: Dict[int, List[int]] = {}
    for (u, v) in cap:
        adj.setdefault(u, []).append(v)
    source, target = 2 * idx[s] + 1, 2 * idx[t]
    flow = 0
    while True:
        parent = {source: source}
        queue = deque([source])
        while queue and target not in parent:
            u = queue.popleft()
            for v in adj.get(u, ()):
                if v not in parent and cap[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if target not in parent:
            return flow
        v = target
        while v != source:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1


@dataclass
class HoltKleeReport:
    holds: bool
    source: Optional[str]
    sink: Optional[str]
    disjoint_path_count: int
    required_d: int

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "source": self.source,
            "sink": self.sink,
            "disjoint_path_count": self.disjoint_path_count,
            "required_d": self.required_d,
        }

    def __str__(self) -> str:
        return json.dumps(self.to_json())


def holt_klee(g: Digraph, d: int) -> HoltKleeReport:
    """Unique source and sink joined by at least d vertex-disjoint paths."""
    ok, s, t = unique_source_sink(g)
    if not ok:
        return HoltKleeReport(False, None if s is None else str(s),
                              None if t is None else str(t), 0, d)
    k = max_disjoint_paths(g, s, t)
    return HoltKleeReport(k >= d, str(s), str(t), k, d)


def enumerate_acyclic_uso(
    vertices: Sequence[V],
    edges: Sequence[Tuple[V, V]],
    faces: Optional[Sequence[Sequence[V]]] = None,
) -> Iterator[Digraph]:
    """All edge orientations that are acyclic with unique source and sink.

    Edges are unordered pairs; orientation k sends edge i as given when
    bit i of k is 0 and reversed when it is 1, so output order is
    deterministic.  When faces are supplied, the subgraph induced by each
    face must also have a unique source and sink.
    """
    edges = [tuple(e) for e in edges]
    m = len(edges)
    if m > 24:
        raise ValueError(f"{m} edges is too many to enumerate")
    face_sets = [frozenset(f) for f in faces] if faces else []
    for k in range(1 << m):
        arcs = [
            (v, u) if (k >> i) & 1 else (u, v) for i, (u, v) in enumerate(edges)
        ]
        g = Digraph(vertices, arcs)
        if not is_acyclic(g):
            continue
        ok, _, _ = unique_source_sink(g)
        if not ok:
            continue
        if face_sets:
            bad = False
            for fs in face_sets:
                farcs = [(u, v) for u, v in arcs if u in fs and v in fs]
                fok, _, _ = unique_source_sink(Digraph(sorted(fs, key=str), farcs))
                if not fok:
                    bad = True
                    break
            if bad:
                continue
        yield g
