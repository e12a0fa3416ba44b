from itertools import permutations

import pytest

from omhk.digraph import is_acyclic, unique_source_sink
from omhk.fixtures import rank3_arrangement
from omhk.programs import (
    feasible_region,
    holt_klee_report,
    is_bounded,
    is_euclidean_matroid,
    is_euclidean_program,
    is_hk_matroid,
    is_hk_program,
    is_proper_program,
    minors_of_rank_at_least,
    program_graph,
    program_report,
    reorientation_masks,
)
from omhk.matroid import OrientedMatroid


# -- one bounded program, checked coordinate by coordinate --------------


def test_triangle_program_report(triangle_om):
    rep = program_report(triangle_om, 4, 5)
    assert rep["proper"] and rep["bounded"] and rep["generic"]
    assert rep["euclidean"] and rep["hk"]
    hk = rep["holt_klee"]
    assert hk["source"] == "00++" and hk["sink"] == "+00+"
    assert hk["disjoint_path_count"] == 2 and hk["required_d"] == 2
    assert hk["holds"]


def test_triangle_program_graph_is_uso(triangle_om):
    g = program_graph(triangle_om, 4, 5, feasible_only=True)
    assert is_acyclic(g)
    ok, s, t = unique_source_sink(g)
    assert ok and s == "00++" and t == "+00+"
    # three corners of the feasible triangle
    assert len(g.vertices) == 3
    # the full region: corners, open edges and the interior
    region = feasible_region(triangle_om, 4, 5)
    assert len(region) == 7
    assert set(g.vertices) <= {str(v) for v in region}


def test_triangle_program_flags_match_piecewise_queries(triangle_om):
    assert is_proper_program(triangle_om, 4, 5)
    assert is_bounded(triangle_om, 4, 5)
    assert is_euclidean_program(triangle_om, 4, 5)
    assert is_hk_program(triangle_om, 4, 5)
    rep = holt_klee_report(triangle_om, 4, 5)
    assert rep.holds and rep.disjoint_path_count == 2


# -- degenerate choices are reported, never raised ----------------------


def test_loop_and_coloop_objectives_short_circuit():
    from omhk.chirotope import chirotope_from_points

    om = OrientedMatroid.from_chirotope(
        chirotope_from_points([(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)])
    )
    assert om.loops() == (4,)
    rep = program_report(om, 4, 1)
    assert rep["proper"] is False and "loop" in rep["degenerate"]
    coloopy = OrientedMatroid.from_chirotope(
        chirotope_from_points([(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    )
    assert coloopy.coloops() == (4,)
    rep = program_report(coloopy, 1, 4)
    assert rep["proper"] is False and "coloop" in rep["degenerate"]
    assert rep["hk"] is None
    assert not is_proper_program(coloopy, 1, 4)
    assert not is_proper_program(om, 4, 1)


def test_coloop_objective_raises_only_at_frame_level():
    from omhk.chirotope import chirotope_from_points
    from omhk.programs import ProgramFrame

    om = OrientedMatroid.from_chirotope(
        chirotope_from_points([(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    )
    with pytest.raises(ValueError):
        ProgramFrame(om, 4)


# -- rank-3 programs always satisfy the path bound -----------------------


def _rank3_oms(triangle_om, shelling_om):
    return [triangle_om, shelling_om,
            OrientedMatroid.from_chirotope(rank3_arrangement())]


def test_every_proper_rank3_program_passes(triangle_om, shelling_om):
    for om in _rank3_oms(triangle_om, shelling_om):
        labels = range(1, om.n + 1)
        proper = 0
        for g, f in permutations(labels, 2):
            if not is_proper_program(om, g, f):
                continue
            proper += 1
            assert is_hk_program(om, g, f), (om, g, f)
            dg = program_graph(om, g, f, feasible_only=True)
            assert is_acyclic(dg)
            ok, _, _ = unique_source_sink(dg)
            assert ok
        assert proper > 0 or om.n < 5


# -- sweeps over minors and reorientations -------------------------------


def test_reorientation_masks_fix_first_element():
    masks = reorientation_masks(4)
    assert list(masks) == [0, 2, 4, 6, 8, 10, 12, 14]
    assert len(reorientation_masks(8)) == 128


def test_minor_enumeration_counts(ic842_om):
    minors = list(minors_of_rank_at_least(ic842_om, 4))
    assert len(minors) == 163
    assert any(d.deleted == () and d.contracted == () for d, _ in minors)
    for _, m in minors:
        assert m.rank >= 4


def test_hk_sweep_anchors(ic842_om, all_plus84_om):
    full = is_hk_matroid(ic842_om, "full")
    assert full.holds
    assert full.programs_checked == 80192
    assert full.proper_programs == 5488
    assert full.minors_checked == 163

    quick = is_hk_matroid(ic842_om, "quick")
    assert quick.holds and quick.minors_checked == 1
    # in its given orientation this matroid has no proper program at all
    assert quick.programs_checked == 56 and quick.proper_programs == 0

    ap = is_hk_matroid(all_plus84_om, "full")
    assert ap.holds and ap.programs_checked == 80192
    assert ap.proper_programs == 5488


def test_euclidean_sweep_finds_witness(ic842_om, all_plus84_om):
    r = is_euclidean_matroid(ic842_om)
    assert not r.holds
    assert r.witness == {"g": 1, "f": 8}
    assert is_euclidean_matroid(all_plus84_om).holds


def test_sweep_rejects_unknown_mode(ic842_om):
    with pytest.raises(ValueError):
        is_hk_matroid(ic842_om, "fast")
