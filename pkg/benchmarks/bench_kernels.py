"""Timing comparison of the two kernel lanes on the census hot paths.

Runs the same workloads through the numpy lane and, when importable,
the jit lane, checking that both produce identical results before
reporting times.  The jit lane is warmed up once so compilation is not
billed to the measurement.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from omhk import kernels
from omhk.fixtures import ic842
from omhk.matroid import OrientedMatroid
from omhk.programs import _coloops_mask, _loops_mask, _pack_frames, \
    reorientation_masks


def _workloads():
    om = OrientedMatroid.from_chirotope(ic842())
    cocs = np.asarray(om._cocircuit_codes(), dtype=np.uint64)
    codes = om.codes
    topes = np.asarray(om._tope_codes(), dtype=np.uint64)
    packed = _pack_frames(om)
    rmasks = reorientation_masks(om.n)[:32]
    sweep_args = (
        om.n, om.rank, rmasks,
        packed["coc_codes"], packed["phi"], packed["coc_off"],
        packed["edge_codes"], packed["enda"], packed["endb"],
        packed["edge_off"], packed["wb"],
        topes, codes,
        np.uint64(_loops_mask(om)), np.uint64(_coloops_mask(om)),
    )
    return [
        ("span_codes", lambda lane: lane.span_codes(cocs, 1 << 20)),
        ("minimal_nonzero", lambda lane: lane.minimal_nonzero(codes)),
        ("edge_covectors", lambda lane: lane.edge_covectors(codes, cocs)[0]),
        ("simplicial_topes",
         lambda lane: lane.count_simplicial_topes(codes, topes, om.rank)),
        ("program_sweep_32", lambda lane: lane.program_sweep(*sweep_args)),
    ]


def _norm(x):
    if isinstance(x, tuple):
        return tuple(np.asarray(v) for v in x)
    return np.asarray(x)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    lanes = {"numpy": kernels.get("numpy")}
    try:
        lanes["numba"] = kernels.get("numba")
    except ImportError:
        print("jit lane unavailable; timing the fallback lane only")

    jobs = _workloads()
    if "numba" in lanes:
        for _, fn in jobs:
            fn(lanes["numba"])  # warm-up: compile outside the clock

    width = max(len(name) for name, _ in jobs)
    header = f"{'workload':<{width}}  " + "  ".join(f"{k:>10}" for k in lanes)
    print(header)
    print("-" * len(header))
    speedups = []
    for name, fn in jobs:
        results = {}
        times = {}
        for key, lane in lanes.items():
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                out = fn(lane)
                best = min(best, time.perf_counter() - t0)
            results[key] = _norm(out)
            times[key] = best
        if len(results) == 2:
            a, b = results["numpy"], results["numba"]
            if isinstance(a, tuple):
                same = all(np.array_equal(x, y) for x, y in zip(a, b))
            else:
                same = np.array_equal(a, b)
            if not same:
                print(f"{name}: LANES DISAGREE", file=sys.stderr)
                return 1
            speedups.append(times["numpy"] / times["numba"])
        row = f"{name:<{width}}  " + "  ".join(
            f"{times[k] * 1e3:>8.2f}ms" for k in lanes)
        print(row)
    if speedups:
        print(f"\njit lane speedup: min {min(speedups):.2f}x, "
              f"max {max(speedups):.2f}x (best-of-{args.repeat}, "
              "identical outputs on every workload)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
