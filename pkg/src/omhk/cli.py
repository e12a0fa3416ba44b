"""Command-line surface.

Exit codes are stable: 0 success, 1 the computation succeeded but the
property fails, 2 input error, 3 internal verification failure.  Output
is JSON with sorted keys unless --plain; nothing nondeterministic goes
to stdout unless --timing asks for it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from .census import batch_classify
from .chirotope import parse_chirotope
from .matroid import OrientedMatroid
from .shellings import coline_shelling, is_hkstar_fixation, is_proper_fixation, \
    shelling_digraph
from .programs import program_graph, program_report

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _emit(payload: dict, plain: bool) -> None:
    if plain:
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                v = json.dumps(v, sort_keys=True)
            print(f"{k}: {v}")
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _load_om(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        chi = parse_chirotope(fh.read())
    return chi, OrientedMatroid.from_chirotope(chi)


def cmd_validate(args) -> int:
    try:
        chi, om = _load_om(args.file)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    except ValueError as exc:
        return _fail(f"parse: {exc}", EXIT_INPUT)
    rep = om.validate()
    payload = {
        "n": chi.n,
        "r": chi.r,
        "uniform": chi.is_uniform(),
        "cocircuits": len(om.cocircuits()),
        "topes": len(om.topes()),
        "axioms_ok": rep.ok,
    }
    if not rep.ok:
        payload["errors"] = rep.errors
    _emit(payload, args.plain)
    return EXIT_OK if rep.ok else EXIT_PROPERTY


def cmd_program(args) -> int:
    try:
        chi, om = _load_om(args.file)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    except ValueError as exc:
        return _fail(f"parse: {exc}", EXIT_INPUT)
    g, f = args.g, args.f
    if not (1 <= g <= chi.n and 1 <= f <= chi.n) or g == f:
        return _fail(f"g and f must be distinct elements in 1..{chi.n}", EXIT_INPUT)
    if args.reorient:
        try:
            labels = _parse_labels(args.reorient, chi.n)
        except ValueError as exc:
            return _fail(str(exc), EXIT_INPUT)
        om = om.reorient(labels)
    payload = program_report(om, g, f)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(program_graph(om, g, f, feasible_only=True).to_dot("program"))
    _emit(payload, args.plain)
    if not payload["proper"]:
        return EXIT_PROPERTY
    return EXIT_OK if payload["hk"] else EXIT_PROPERTY


def _parse_labels(text: str, n: int):
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lab = int(part)
        if not 1 <= lab <= n:
            raise ValueError(f"label {lab} outside 1..{n}")
        out.append(lab)
    if not out:
        raise ValueError("empty label list")
    return out


def cmd_shelling(args) -> int:
    try:
        chi, om = _load_om(args.file)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    except ValueError as exc:
        return _fail(f"parse: {exc}", EXIT_INPUT)
    try:
        coline = frozenset(_parse_labels(args.coline, chi.n))
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT)
    if coline not in om.colines():
        return _fail(f"{sorted(coline)} is not a coline of this matroid", EXIT_INPUT)
    if not is_proper_fixation(om, coline):
        return _fail(f"fixation at {sorted(coline)} is not proper", EXIT_INPUT)
    try:
        cert = is_hkstar_fixation(om, coline, chirotope=str(chi))
    except RuntimeError as exc:
        return _fail(str(exc), EXIT_INTERNAL)
    payload = cert.to_json()
    payload["shelling_order"] = list(coline_shelling(om, coline))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(shelling_digraph(om, coline).to_dot("shelling"))
    _emit(payload, args.plain)
    return EXIT_OK if cert.hkstar else EXIT_PROPERTY


def cmd_classify(args) -> int:
    catalog = args.catalog
    if catalog is None:
        base = os.environ.get("OM_CATALOG_DIR")
        if base is None:
            return _fail("no catalog given and OM_CATALOG_DIR is not set", EXIT_INPUT)
        catalog = os.path.join(base, "catalog.txt")
    t0 = time.time()
    try:
        res = batch_classify(catalog, mode=args.mode, jobs=args.jobs,
                             out=args.out, checkpoint=args.checkpoint)
    except FileNotFoundError as exc:
        return _fail(f"catalog not found: {exc}", EXIT_INPUT)
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT)
    payload = {
        "aggregate": res.aggregate,
        "skipped_lines": res.skipped_lines,
        "diagnostics": res.diagnostics,
    }
    if args.timing:
        payload["elapsed_s"] = round(time.time() - t0, 3)
    _emit(payload, args.plain)
    return EXIT_OK


def _construct_fixation(args) -> int:
    from .geometry import ConstructionError, build_non_hkstar

    if args.rank is None or args.size is None:
        return _fail("construct needs --rank and --size", EXIT_INPUT)
    try:
        fc = build_non_hkstar(args.rank, args.size)
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT)
    except ConstructionError as exc:
        return _fail(str(exc), EXIT_INTERNAL)
    payload = fc.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
    _emit(payload, args.plain)
    return EXIT_OK


def _construct_sensitive(args) -> int:
    from .geometry import all_orientations_insensitive, find_sensitive_objective, \
        six_vertex_catalog, small_polytopes

    k = args.vertices
    if k is None:
        return _fail("construct sensitive needs --vertices", EXIT_INPUT)
    if k < 4:
        return _fail("a 3-polytope needs at least 4 vertices", EXIT_INPUT)
    if k > 6:
        return _fail("only catalogs up to 6 vertices ship with the package",
                     EXIT_INPUT)
    if k < 6:
        rows = []
        for name, P in small_polytopes():
            if len(P.vertices) != k:
                continue
            rows.append({
                "polytope": name,
                "vertices": k,
                "sensitive_orientations": all_orientations_insensitive(P, use_faces=True),
            })
        payload = {
            "found": False,
            "exhaustive": True,
            "note": "every acyclic orientation with unique face sources and "
                    "sinks was enumerated; none admits a sensitive marking",
            "polytopes": rows,
        }
        _emit(payload, args.plain)
        return EXIT_PROPERTY
    rows = []
    found = 0
    for entry in six_vertex_catalog():
        seeds = [entry.sensitive_hint] if entry.sensitive_hint else []
        m = find_sensitive_objective(entry.polytope, seeds=seeds)
        row = {"polytope": entry.name, "sensitive": m is not None}
        if m is not None:
            found += 1
            row["objective"] = [str(x) for x in m.objective]
            row["source"] = m.source
            row["marked"] = m.marked
        rows.append(row)
    payload = {"found": found > 0, "count": found, "polytopes": rows}
    _emit(payload, args.plain)
    return EXIT_OK if found else EXIT_PROPERTY


def cmd_construct(args) -> int:
    if args.kind == "sensitive":
        return _construct_sensitive(args)
    return _construct_fixation(args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="omhk",
        description="Oriented matroid property tests and constructions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a chirotope file and check axioms")
    p.add_argument("file")
    p.add_argument("--plain", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("program", help="objective digraph report for (g, f)")
    p.add_argument("file")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--reorient", help="comma-separated labels to reorient")
    p.add_argument("--dot", metavar="FILE", help="write the digraph in DOT form")
    p.add_argument("--plain", action="store_true")
    p.set_defaults(func=cmd_program)

    p = sub.add_parser("shelling", help="coline shelling order and path bound")
    p.add_argument("file")
    p.add_argument("--coline", required=True, help="comma-separated labels")
    p.add_argument("--dot", metavar="FILE", help="write the digraph in DOT form")
    p.add_argument("--plain", action="store_true")
    p.set_defaults(func=cmd_shelling)

    p = sub.add_parser("classify", help="batch census over a catalog file")
    p.add_argument("catalog", nargs="?", default=None,
                   help="catalog path; default $OM_CATALOG_DIR/catalog.txt")
    p.add_argument("--mode", choices=("quick", "full"), default="quick")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", metavar="FILE",
                   help="write per-entry rows as CSV (a .json mirror rides along)")
    p.add_argument("--checkpoint", metavar="FILE")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--plain", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct",
                       help="build certified instances from the geometry kit")
    p.add_argument("kind", nargs="?", choices=("sensitive",),
                   help="omit to build a failing coline fixation")
    p.add_argument("--rank", type=int)
    p.add_argument("--size", type=int)
    p.add_argument("--vertices", type=int)
    p.add_argument("--out", metavar="FILE", help="also write the certificate here")
    p.add_argument("--plain", action="store_true")
    p.set_defaults(func=cmd_construct)

    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
