from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omhk.digraph import (
    Digraph,
    enumerate_acyclic_uso,
    holt_klee,
    is_acyclic,
    max_disjoint_paths,
    unique_source_sink,
)
from omhk.fixtures import CUBE_CUT_ARCS, CUBE_VERTICES, cube_linear_arcs

from oracles import nx_disjoint_paths

SQUARE = ("a", "b", "c", "d")
SQUARE_EDGES = (("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"))


def test_digraph_dedupes_and_validates():
    g = Digraph("ab", [("a", "b"), ("a", "b")])
    assert g.arcs == (("a", "b"),)
    with pytest.raises(ValueError):
        Digraph("ab", [("a", "c")])
    with pytest.raises(ValueError):
        Digraph("ab", [("a", "a")])


def test_neighbors_and_reverse():
    g = Digraph("abc", [("a", "b"), ("a", "c"), ("b", "c")])
    assert g.out_neighbors("a") == ("b", "c")
    assert g.in_neighbors("c") == ("a", "b")
    assert g.sources() == ("a",) and g.sinks() == ("c",)
    r = g.reverse()
    assert set(r.arcs) == {("b", "a"), ("c", "a"), ("c", "b")}
    assert r.sources() == ("c",)


def test_acyclicity():
    assert is_acyclic(Digraph("abc", [("a", "b"), ("b", "c")]))
    assert not is_acyclic(Digraph("abc", [("a", "b"), ("b", "c"), ("c", "a")]))
    assert is_acyclic(Digraph("ab", []))


def test_unique_source_sink_reports():
    ok, s, t = unique_source_sink(Digraph("abc", [("a", "b"), ("b", "c")]))
    assert ok and s == "a" and t == "c"
    ok, _, _ = unique_source_sink(Digraph("abcd", [("a", "b"), ("c", "d")]))
    assert not ok


def test_disjoint_paths_small_cases():
    g = Digraph("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    assert max_disjoint_paths(g, "a", "d") == 2
    assert max_disjoint_paths(g, "b", "c") == 0
    direct = Digraph("ab", [("a", "b")])
    assert max_disjoint_paths(direct, "a", "b") == 1
    with pytest.raises(ValueError):
        max_disjoint_paths(direct, "a", "a")


def test_cube_fixtures_against_flow_oracle():
    cut = Digraph(CUBE_VERTICES, CUBE_CUT_ARCS)
    assert is_acyclic(cut)
    ok, s, t = unique_source_sink(cut)
    assert ok and s == "000" and t == "111"
    assert max_disjoint_paths(cut, s, t) == 2
    assert nx_disjoint_paths(CUBE_VERTICES, CUBE_CUT_ARCS, s, t) == 2
    rep = holt_klee(cut, 3)
    assert not rep.holds and rep.disjoint_path_count == 2

    lin = Digraph(CUBE_VERTICES, cube_linear_arcs())
    ok, s, t = unique_source_sink(lin)
    assert ok and s == "000" and t == "111"
    assert holt_klee(lin, 3).holds
    assert nx_disjoint_paths(CUBE_VERTICES, lin.arcs, s, t) == 3


def test_holt_klee_without_unique_endpoints():
    rep = holt_klee(Digraph("abcd", [("a", "b"), ("c", "d")]), 2)
    assert not rep.holds and rep.disjoint_path_count == 0
    payload = rep.to_json()
    assert payload["holds"] is False and payload["required_d"] == 2


dag_strategy = st.integers(min_value=2, max_value=9).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.sets(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(
                lambda p: p[0] < p[1]
            ),
            max_size=n * (n - 1) // 2,
        ),
    )
)


@settings(max_examples=120, deadline=None)
@given(dag_strategy)
def test_disjoint_paths_agree_with_flow_oracle(data):
    n, pairs = data
    vertices = tuple(range(n))
    arcs = tuple(sorted(pairs))
    g = Digraph(vertices, arcs)
    got = max_disjoint_paths(g, 0, n - 1)
    assert got == nx_disjoint_paths(vertices, arcs, 0, n - 1)


@settings(max_examples=60, deadline=None)
@given(dag_strategy)
def test_disjoint_paths_bounded_by_degrees(data):
    n, pairs = data
    g = Digraph(range(n), sorted(pairs))
    k = max_disjoint_paths(g, 0, n - 1)
    assert k <= len(g.out_neighbors(0)) or (0, n - 1) in pairs
    assert k <= len(g.in_neighbors(n - 1)) or (0, n - 1) in pairs


def test_enumerate_square_orientations():
    usos = list(enumerate_acyclic_uso(SQUARE, SQUARE_EDGES))
    # one orientation per ordered (source, sink) pair of distinct corners
    assert len(usos) == 12
    for g in usos:
        assert is_acyclic(g)
        ok, _, _ = unique_source_sink(g)
        assert ok
    # deterministic: the same call yields the same arc sequences
    again = [g.arcs for g in enumerate_acyclic_uso(SQUARE, SQUARE_EDGES)]
    assert again == [g.arcs for g in usos]


def test_enumerate_cube_orientations_with_faces():
    edges = tuple((u, v) for u, v in cube_linear_arcs())
    faces = [
        [v for v in CUBE_VERTICES if v[k] == b]
        for k in range(3) for b in "01"
    ]
    free = sum(1 for _ in enumerate_acyclic_uso(CUBE_VERTICES, edges))
    faced = 0
    cut_found = lin_found = False
    for g in enumerate_acyclic_uso(CUBE_VERTICES, edges, faces=faces):
        faced += 1
        arcs = set(g.arcs)
        cut_found = cut_found or arcs == set(CUBE_CUT_ARCS)
        lin_found = lin_found or arcs == set(cube_linear_arcs())
    # on the 3-cube, global acyclicity with one source and one sink already
    # forces every 2-face to behave (cross-checked by brute force over all
    # 4096 orientations), so the face filter rejects nothing here
    assert faced == free == 728
    assert cut_found and lin_found


def test_face_filter_rejects_double_source_squares():
    # square abcd hung between an apex s and a pit t; orientations that are
    # globally fine can still give the square two sources and two sinks
    verts = ("s", "a", "b", "c", "d", "t")
    edges = (("s", "a"), ("s", "c"), ("a", "b"), ("b", "c"), ("c", "d"),
             ("d", "a"), ("b", "t"), ("d", "t"))
    free = sum(1 for _ in enumerate_acyclic_uso(verts, edges))
    faced = sum(
        1 for _ in enumerate_acyclic_uso(verts, edges, faces=[("a", "b", "c", "d")])
    )
    assert 0 < faced < free
    bad = Digraph(verts, (("s", "a"), ("s", "c"), ("a", "b"), ("c", "b"),
                          ("c", "d"), ("a", "d"), ("b", "t"), ("d", "t")))
    assert is_acyclic(bad) and unique_source_sink(bad)[0]
    rejected = {frozenset(g.arcs)
                for g in enumerate_acyclic_uso(verts, edges,
                                               faces=[("a", "b", "c", "d")])}
    assert frozenset(bad.arcs) not in rejected


def test_enumerate_refuses_oversized_edge_lists():
    verts = list(range(30))
    edges = list(combinations(range(26), 2))[:25]
    with pytest.raises(ValueError):
        next(enumerate_acyclic_uso(verts, edges))
