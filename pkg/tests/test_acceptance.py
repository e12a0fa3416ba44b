"""Acceptance gate: eleven numbered criteria, one pass/fail line each.

Criteria 6 and 7 need catalog files that do not ship with the package
(OM_CATALOG_DIR/uniform48.txt and OM_CATALOG_DIR/nonuniform48.txt);
without them those two are reported as skipped, never as passed.
"""

import itertools
import os
import random
import time
from fractions import Fraction

import pytest

from omhk.census import batch_classify, classify_one, CatalogEntry, ingest_catalog
from omhk.chirotope import parse_chirotope
from omhk.digraph import Digraph, is_acyclic, max_disjoint_paths, unique_source_sink
from omhk.fixtures import IC842_BLOCK, all_plus, ic842, rank3_shelling, triangle_program
from omhk.geometry import (
    all_orientations_insensitive,
    build_non_hkstar,
    find_sensitive_objective,
    is_sensitive,
    six_vertex_catalog,
    small_polytopes,
)
from omhk.matroid import OrientedMatroid
from omhk.programs import is_proper_program, program_graph
from omhk.shellings import (
    coline_shelling,
    is_hkstar_fixation,
    is_proper_fixation,
    shelling_digraph,
)
from omhk.signvec import SignVector, compose

from oracles import nx_disjoint_paths, sign_cells


def _timed(budget_s):
    start = time.perf_counter()

    def check():
        elapsed = time.perf_counter() - start
        assert elapsed < budget_s, f"took {elapsed:.1f}s, budget {budget_s}s"

    return check


def _catalog(name):
    base = os.environ.get("OM_CATALOG_DIR")
    if not base:
        pytest.skip("OM_CATALOG_DIR is not set; this criterion is skipped, not passed")
    path = os.path.join(base, name)
    if not os.path.exists(path):
        pytest.skip(f"{path} is absent; this criterion is skipped, not passed")
    return path


def test_criterion_01_block_fixture_parses_exactly():
    done = _timed(1.0)
    chi = parse_chirotope(IC842_BLOCK)
    assert chi.n == 8 and chi.r == 4
    assert chi.is_uniform()
    assert len(chi.signs) == 70
    assert chi.sign((1, 2, 3, 5)) == 1
    done()


def test_criterion_02_shelling_order_is_327645_up_to_reversal():
    done = _timed(5.0)
    om = OrientedMatroid.from_chirotope(parse_chirotope(IC842_BLOCK))
    order = coline_shelling(om, (1, 8))
    assert tuple(order) in ((3, 2, 7, 6, 4, 5), (5, 4, 6, 7, 2, 3))
    done()


def test_criterion_03_shelling_digraph_misses_the_path_bound():
    done = _timed(5.0)
    om = OrientedMatroid.from_chirotope(parse_chirotope(IC842_BLOCK))
    cert = is_hkstar_fixation(om, (1, 8))
    assert cert.source == 3 and cert.sink == 5
    assert cert.disjoint_path_count == 2
    assert cert.required_d == 3
    assert not cert.hkstar
    done()


def test_criterion_04_full_census_of_the_fixture():
    done = _timed(600.0)
    rep = classify_one(CatalogEntry("ic842", 8, 4, ic842().to_line().split()[2]),
                       mode="full")
    assert rep.hk is True
    assert rep.hkstar is False
    assert rep.euclidean is False
    assert rep.shannon is False
    assert rep.simplicial_tope_count < 16
    done()


def test_criterion_05_representable_control_passes_everything():
    done = _timed(600.0)
    rep = classify_one(CatalogEntry("allplus", 8, 4,
                                    all_plus(8, 4).to_line().split()[2]),
                       mode="full")
    assert rep.hk and rep.hkstar and rep.euclidean and rep.shannon
    done()


def test_criterion_06_uniform_catalog_census(tmp_path):
    path = _catalog("uniform48.txt")
    entries = list(ingest_catalog(path))
    assert len(entries) == 2628, "expected the 2,628-entry uniform catalog"
    res = batch_classify(path, mode="full", jobs=min(8, os.cpu_count() or 1),
                         checkpoint=str(tmp_path / "uniform48.ck.json"))
    agg = res.aggregate
    assert agg["errors"] == 0
    assert agg["non_hkstar"] == 18
    assert agg["non_euclidean"] == 18
    assert agg["non_shannon"] == 1
    assert agg["non_hk"] == 0


def test_criterion_07_non_uniform_catalog_census(tmp_path):
    path = _catalog("nonuniform48.txt")
    res = batch_classify(path, mode="full", jobs=min(8, os.cpu_count() or 1),
                         checkpoint=str(tmp_path / "nonuniform48.ck.json"))
    agg = res.aggregate
    assert agg["errors"] == 0
    assert agg["non_euclidean"] == 3444
    # the two published counts for this quantity disagree; matching either
    # one is accepted and the discrepancy is surfaced here
    assert agg["non_hkstar"] in (1364, 1344), (
        f"non-HK* count {agg['non_hkstar']} matches neither published figure "
        "(1,364 / 1,344)")
    print(f"note: non-HK* count {agg['non_hkstar']} matches one of the two "
          "conflicting published figures (1,364 and 1,344)")


def test_criterion_08_small_polytopes_admit_no_sensitive_orientation():
    done = _timed(60.0)
    rows = dict(small_polytopes())
    for name in ("simplex", "square_pyramid", "bipyramid"):
        assert all_orientations_insensitive(rows[name], use_faces=True) == 0, name
    done()


def test_criterion_09_sensitive_objectives_on_six_vertex_catalog():
    done = _timed(600.0)
    found = {}
    for entry in six_vertex_catalog():
        seeds = [entry.sensitive_hint] if entry.sensitive_hint else []
        m = find_sensitive_objective(entry.polytope, seeds=seeds)
        if m is None:
            continue
        assert is_sensitive(m)
        assert all(isinstance(x, Fraction) for x in m.objective)
        found[entry.name] = tuple(m.objective)
    assert len(found) >= 5, f"sensitive objectives on only {sorted(found)}"
    done()


def test_criterion_10_flip_construction_spot_checks():
    done = _timed(1800.0)
    for rank, size in ((4, 8), (4, 9), (5, 10)):
        fc = build_non_hkstar(rank, size)
        payload = fc.to_json()
        # re-verify from the emitted text alone
        emitted = parse_chirotope(f"{size} {rank} {payload['chirotope']}")
        om = OrientedMatroid.from_chirotope(emitted)
        coline = tuple(payload["coline"])
        assert is_proper_fixation(om, coline)
        cert = is_hkstar_fixation(om, coline)
        assert not cert.hkstar, (rank, size)
        assert cert.disjoint_path_count < cert.required_d == rank - 1
    done()


# -- criterion 11: property suites, all in one verdict -------------------


def _closure_violations(om, sample=None):
    cov = om.covectors()
    codes = {v.to_code() for v in cov}
    bad = 0
    pairs = itertools.product(cov, cov)
    if sample is not None:
        rng = random.Random(20260821)
        cl = list(cov)
        pairs = ((rng.choice(cl), rng.choice(cl)) for _ in range(sample))
    for x, y in pairs:
        if compose(x, y).to_code() not in codes:
            bad += 1
        if (-x).to_code() not in codes:
            bad += 1
    return bad


def _brute_disjoint_paths(vertices, arcs, s, t):
    out = {v: [] for v in vertices}
    for u, v in arcs:
        out[u].append(v)

    paths = []

    def walk(v, seen, trail):
        if v == t:
            paths.append(frozenset(trail))
            return
        for w in out[v]:
            if w not in seen:
                walk(w, seen | {w}, trail + ([w] if w != t else []))

    walk(s, {s}, [])

    best = 0

    def pack(i, used, count):
        nonlocal best
        best = max(best, count)
        if count + (len(paths) - i) <= best:
            return
        for j in range(i, len(paths)):
            p = paths[j]
            if not (p & used):
                pack(j + 1, used | p, count + 1)

    pack(0, frozenset(), 0)
    return best


def test_criterion_11_property_suites_hold_everywhere():
    # sign vector closure on every covector set built above
    small = [
        OrientedMatroid.from_chirotope(triangle_program()),
        OrientedMatroid.from_chirotope(rank3_shelling()),
    ]
    for om in small:
        assert _closure_violations(om) == 0
    big = OrientedMatroid.from_chirotope(ic842())
    assert _closure_violations(big, sample=20000) == 0

    # objective digraphs of proper programs are acyclic with one source
    # and one sink
    programs = 0
    for om in small + [big.reorient([6])]:
        for g, f in itertools.permutations(range(1, om.n + 1), 2):
            if not is_proper_program(om, g, f):
                continue
            programs += 1
            dg = program_graph(om, g, f, feasible_only=True)
            assert is_acyclic(dg), (g, f)
            ok, _, _ = unique_source_sink(dg)
            assert ok, (g, f)
    assert programs > 0

    # shelling digraphs of proper fixations are acyclic with one source
    # and one sink
    fixations = 0
    for om in (big, OrientedMatroid.from_chirotope(all_plus(8, 4))):
        for coline in om.colines():
            if not is_proper_fixation(om, coline):
                continue
            fixations += 1
            g = shelling_digraph(om, coline)
            assert is_acyclic(g), coline
            ok, _, _ = unique_source_sink(g)
            assert ok, coline
    assert fixations > 0

    # disjoint path counts agree with an independent flow solver on random
    # DAGs, and with literal path packing on the smaller ones
    rng = random.Random(11842)
    for _ in range(150):
        n = rng.randint(2, 10)
        arcs = sorted(
            (i, j)
            for i in range(n) for j in range(i + 1, n)
            if rng.random() < 0.45
        )
        g = Digraph(range(n), arcs)
        got = max_disjoint_paths(g, 0, n - 1)
        assert got == nx_disjoint_paths(tuple(range(n)), arcs, 0, n - 1)
        if n <= 7:
            assert got == _brute_disjoint_paths(tuple(range(n)), arcs, 0, n - 1)

    # covector sets of rational configurations equal their realization
    # cell enumerations
    configs = [
        [(1, 0), (0, 1), (1, 1), (1, -2), (3, 1), (2, 3)],
        [(1, 0, 0), (0, 1, 0), (-1, -1, 1), (0, 0, 1), (2, 1, 1), (1, 2, 0)],
        [(1, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)],
        [(0, 0, 1), (1, 0, 0), (0, 1, 0), (1, 1, 1)],
        [(1, 2), (2, 4), (-1, -2), (0, 1)],
    ]
    from omhk.chirotope import chirotope_from_points

    for pts in configs:
        om = OrientedMatroid.from_chirotope(chirotope_from_points(pts))
        assert {tuple(v) for v in om.covectors()} == sign_cells(pts), pts
