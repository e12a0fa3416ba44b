import pytest

from omhk.digraph import is_acyclic, unique_source_sink
from omhk.fixtures import rank3_arrangement
from omhk.matroid import OrientedMatroid
from omhk.shellings import (
    coline_shelling,
    facet_adjacency,
    is_generic_coline,
    is_hkstar_fixation,
    is_hkstar_matroid,
    is_proper_fixation,
    shelling_digraph,
    supercell,
)


def _same_up_to_reversal(a, b):
    return tuple(a) == tuple(b) or tuple(a) == tuple(reversed(b))


# -- the rank-4 counterexample fixation ----------------------------------


def test_ic842_coline_18_is_proper(ic842_om):
    assert frozenset((1, 8)) in set(ic842_om.colines())
    assert is_generic_coline(ic842_om, (1, 8))
    assert is_proper_fixation(ic842_om, (1, 8))


def test_ic842_shelling_order(ic842_om):
    order = coline_shelling(ic842_om, (1, 8))
    assert _same_up_to_reversal(order, (3, 2, 7, 6, 4, 5))


def test_ic842_fixation_fails_path_bound(ic842_om):
    cert = is_hkstar_fixation(ic842_om, (1, 8))
    assert cert.coline == (1, 8)
    assert cert.source == 3 and cert.sink == 5
    assert cert.disjoint_path_count == 2
    assert cert.required_d == 3
    assert not cert.hkstar
    payload = cert.to_json()
    assert payload["T"] == [1, 8]
    assert payload["hkstar"] is False
    assert payload["chirotope"] is None


def test_certificate_carries_chirotope_text(ic842_om):
    from omhk.fixtures import ic842

    line = ic842().to_line()
    cert = is_hkstar_fixation(ic842_om, (1, 8), chirotope=line)
    assert cert.to_json()["chirotope"] == line


def test_ic842_shelling_digraph_shape(ic842_om):
    g = shelling_digraph(ic842_om, (1, 8))
    assert set(g.vertices) == {2, 3, 4, 5, 6, 7}
    assert is_acyclic(g)
    ok, s, t = unique_source_sink(g)
    assert ok and s == 3 and t == 5


# -- the rank-3 worked example -------------------------------------------


def test_rank3_shelling_order_and_certificate(shelling_om):
    assert is_proper_fixation(shelling_om, (1,))
    order = coline_shelling(shelling_om, (1,))
    assert _same_up_to_reversal(order, (2, 4, 3))
    cert = is_hkstar_fixation(shelling_om, (1,))
    assert cert.hkstar
    assert cert.disjoint_path_count >= cert.required_d == 2
    assert set(cert.arcs) == {(2, 4), (2, 3), (4, 3)}


def test_lineality_makes_fixation_improper():
    om = OrientedMatroid.from_chirotope(rank3_arrangement())
    assert not is_proper_fixation(om, (1,))
    with pytest.raises(ValueError):
        coline_shelling(om, (1,))


def test_non_coline_fixations_are_rejected(ic842_om):
    with pytest.raises(ValueError):
        coline_shelling(ic842_om, (1,))
    with pytest.raises(ValueError):
        is_proper_fixation(ic842_om, (1,))


# -- structural properties over every proper fixation ---------------------


def test_all_proper_fixations_give_acyclic_uso(ic842_om, all_plus84_om):
    for om in (ic842_om, all_plus84_om):
        proper = 0
        for coline in om.colines():
            if not is_proper_fixation(om, coline):
                continue
            proper += 1
            g = shelling_digraph(om, coline)
            assert is_acyclic(g)
            ok, _, _ = unique_source_sink(g)
            assert ok
            order = coline_shelling(om, coline)
            assert set(order) == set(om.ground) - set(coline)
        assert proper > 0


def test_shelling_digraph_arcs_follow_adjacent_transpositions(ic842_om):
    # facet adjacency restricted to the shelling order gives exactly the
    # consecutive pairs plus whatever extra crossings the supercell allows
    order = coline_shelling(ic842_om, (1, 8))
    adj = facet_adjacency(ic842_om, (1, 8))
    for a, b in zip(order, order[1:]):
        assert {a, b} in [set(p) for p in adj] or (a, b) in adj or (b, a) in adj


def test_supercell_exists_for_proper_fixations(ic842_om):
    cell = supercell(ic842_om, (1, 8))
    assert cell is not None
    # fixed elements vanish, every shelling element is strictly signed
    assert cell[ic842_om.position(1)] == 0
    assert cell[ic842_om.position(8)] == 0
    for e in (2, 3, 4, 5, 6, 7):
        assert cell[ic842_om.position(e)] != 0


# -- sweep anchors ---------------------------------------------------------


def test_hkstar_sweep_anchors(ic842_om, all_plus84_om):
    full = is_hkstar_matroid(ic842_om, "full")
    assert not full.holds
    assert full.witness["T"] == [1, 8]
    assert full.witness["shelling_order"] == [3, 2, 7, 6, 4, 5]
    assert full.witness["disjoint_path_count"] == 2
    assert full.witness["required_d"] == 3
    assert full.witness["contracted"] == []
    assert full.witness["deleted"] == []
    assert full.witness["reoriented"] == []
    # the very first minor already fails, so the sweep stops there
    assert full.minors_checked == 1
    assert full.fixations_checked == 7
    assert full.proper_fixations == 5

    quick = is_hkstar_matroid(ic842_om, "quick")
    assert not quick.holds and quick.witness == full.witness

    ap = is_hkstar_matroid(all_plus84_om, "full")
    assert ap.holds and ap.witness is None
    assert ap.fixations_checked == 27776
    assert ap.proper_fixations == 9792
    assert ap.minors_checked == 163


def test_hkstar_sweep_rejects_unknown_mode(ic842_om):
    with pytest.raises(ValueError):
        is_hkstar_matroid(ic842_om, "both")
