"""Both kernel lanes must agree bit for bit on every exported function."""

import numpy as np
import pytest

from omhk import kernels
from omhk.fixtures import all_plus, ic842, triangle_program
from omhk.matroid import OrientedMatroid
from omhk.programs import (
    _coloops_mask,
    _loops_mask,
    _pack_frames,
    reorientation_masks,
)

numpy_lane = kernels.get("numpy")
try:
    numba_lane = kernels.get("numba")
except ImportError:
    numba_lane = None

needs_numba = pytest.mark.skipif(numba_lane is None,
                                 reason="jit lane not importable")


def _oms():
    return [
        OrientedMatroid.from_chirotope(ic842()),
        OrientedMatroid.from_chirotope(all_plus(6, 3)),
        OrientedMatroid.from_chirotope(triangle_program()),
    ]


@needs_numba
def test_popcount_parity():
    rng = np.random.default_rng(7)
    a = rng.integers(0, 1 << 62, size=257, dtype=np.int64).astype(np.uint64)
    assert np.array_equal(numpy_lane.popcount64(a), numba_lane.popcount64(a))


def test_popcount_against_python_ints():
    rng = np.random.default_rng(11)
    a = rng.integers(0, 1 << 62, size=64, dtype=np.int64).astype(np.uint64)
    got = numpy_lane.popcount64(a)
    assert [int(x) for x in got] == [bin(int(v)).count("1") for v in a]


@needs_numba
def test_span_codes_parity():
    for om in _oms():
        cocs = np.asarray(om._cocircuit_codes(), dtype=np.uint64)
        a = numpy_lane.span_codes(cocs, 1 << 20)
        b = numba_lane.span_codes(cocs, 1 << 20)
        assert np.array_equal(a, b)


@needs_numba
def test_minimal_and_maximal_parity():
    for om in _oms():
        codes = om.codes
        assert np.array_equal(numpy_lane.minimal_nonzero(codes),
                              numba_lane.minimal_nonzero(codes))
        assert np.array_equal(numpy_lane.maximal_codes(codes),
                              numba_lane.maximal_codes(codes))


@needs_numba
def test_lattice_height_parity():
    for om in _oms():
        assert (numpy_lane.lattice_height(om.codes)
                == numba_lane.lattice_height(om.codes) == om.rank)


@needs_numba
def test_edge_covectors_parity():
    for om in _oms():
        cocs = np.asarray(om._cocircuit_codes(), dtype=np.uint64)
        a = numpy_lane.edge_covectors(om.codes, cocs)
        b = numba_lane.edge_covectors(om.codes, cocs)
        assert len(a) == len(b)
        for x, y in zip(a, b):
            assert np.array_equal(np.asarray(x), np.asarray(y))


@needs_numba
def test_simplicial_tope_parity():
    for om in _oms():
        topes = np.asarray(om._tope_codes(), dtype=np.uint64)
        assert (numpy_lane.count_simplicial_topes(om.codes, topes, om.rank)
                == numba_lane.count_simplicial_topes(om.codes, topes, om.rank))


def _sweep_args(om, masks):
    packed = _pack_frames(om)
    topes = np.asarray(om._tope_codes(), dtype=np.uint64)
    return (
        om.n, om.rank, masks,
        packed["coc_codes"], packed["phi"], packed["coc_off"],
        packed["edge_codes"], packed["enda"], packed["endb"],
        packed["edge_off"], packed["wb"],
        topes, om.codes,
        np.uint64(_loops_mask(om)), np.uint64(_coloops_mask(om)),
    )


@needs_numba
def test_program_sweep_parity():
    om = OrientedMatroid.from_chirotope(ic842())
    masks = reorientation_masks(om.n)[:48]
    a = numpy_lane.program_sweep(*_sweep_args(om, masks))
    b = numba_lane.program_sweep(*_sweep_args(om, masks))
    for x, y in zip(a, b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


def test_lane_selection_honors_environment(monkeypatch):
    monkeypatch.setenv("OMHK_KERNELS", "numpy")
    assert kernels.lane_name() == "numpy"
    assert kernels.active() is numpy_lane
    monkeypatch.setenv("OMHK_KERNELS", "bogus")
    with pytest.raises(ValueError):
        kernels.lane_name()
    monkeypatch.delenv("OMHK_KERNELS")
    assert kernels.lane_name() in ("numpy", "numba")


@needs_numba
def test_forced_jit_lane(monkeypatch):
    monkeypatch.setenv("OMHK_KERNELS", "numba")
    assert kernels.lane_name() == "numba"
    assert kernels.active() is numba_lane


def test_unknown_lane_is_rejected():
    with pytest.raises(ValueError):
        kernels.get("cython")
