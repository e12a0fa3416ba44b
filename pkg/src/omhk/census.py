"""Per-matroid property reports and the batch catalog classifier.

A catalog is a text file of chirotope lines, ``[tag ]n r signs``, one
oriented matroid per line.  Each entry is classified for four
properties (disjoint-path condition on programs, on shellings,
directed-cycle freedom, simplicial tope abundance) and the batch runner
reproduces the census aggregates in catalog order regardless of how
many worker processes are used.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from . import kernels
from .chirotope import Chirotope, parse_chirotope
from .matroid import OrientedMatroid
from .programs import is_euclidean_matroid, is_hk_matroid
from .shellings import is_hkstar_matroid

CSV_HEADER = (
    "id",
    "n",
    "r",
    "uniform",
    "hk",
    "hkstar",
    "euclidean",
    "shannon",
    "simplicial_topes",
    "witness",
)


def simplicial_tope_count(om: OrientedMatroid) -> int:
    """Number of topes covering exactly rank-many covectors."""
    lane = kernels.active()
    return int(lane.count_simplicial_topes(om.codes, om._tope_codes(), om.rank))


def is_shannon(om: OrientedMatroid) -> bool:
    """At least twice as many simplicial topes as ground elements."""
    return simplicial_tope_count(om) >= 2 * om.n


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    n: int
    r: int
    signs: str
    lineno: int = 0

    def chirotope(self) -> Chirotope:
        return parse_chirotope(f"{self.n} {self.r} {self.signs}")


@dataclass
class ClassificationReport:
    id: str
    n: int
    r: int
    uniform: bool
    hk: bool
    hkstar: bool
    euclidean: bool
    shannon: bool
    simplicial_tope_count: int
    witnesses: Optional[Dict[str, dict]] = None
    timing: float = 0.0

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "n": self.n,
            "r": self.r,
            "uniform": self.uniform,
            "hk": self.hk,
            "hkstar": self.hkstar,
            "euclidean": self.euclidean,
            "shannon": self.shannon,
            "simplicial_tope_count": self.simplicial_tope_count,
            "witnesses": self.witnesses,
            "timing": self.timing,
        }

    def to_row(self) -> Tuple[str, ...]:
        wit = ""
        if self.witnesses:
            wit = json.dumps(self.witnesses, sort_keys=True, separators=(",", ":"))
        return (
            self.id,
            str(self.n),
            str(self.r),
            str(self.uniform).lower(),
            str(self.hk).lower(),
            str(self.hkstar).lower(),
            str(self.euclidean).lower(),
            str(self.shannon).lower(),
            str(self.simplicial_tope_count),
            wit,
        )


def classify_one(entry: CatalogEntry, mode: str = "quick") -> ClassificationReport:
    """Classify a single catalog entry.

    quick mode runs the program and shelling sweeps on the matroid
    itself in its given orientation; full mode quantifies over minors
    and reorientations.  Rank <= 3 entries pass both disjoint-path
    properties outright, with no enumeration.
    """
    if mode not in ("quick", "full"):
        raise ValueError(f"mode must be quick or full, got {mode!r}")
    t0 = time.perf_counter()
    try:
        om = OrientedMatroid.from_chirotope(entry.chirotope())
    except ValueError as exc:
        raise ValueError(f"entry {entry.id}: {exc}") from exc

    witnesses: Dict[str, dict] = {}
    if om.rank <= 3:
        hk = hkstar = True
    else:
        hk_res = is_hk_matroid(om, mode=mode)
        hk = hk_res.holds
        if hk_res.witness:
            witnesses["hk"] = hk_res.witness
        hks_res = is_hkstar_matroid(om, mode=mode)
        hkstar = hks_res.holds
        if hks_res.witness:
            witnesses["hkstar"] = hks_res.witness
    euc_res = is_euclidean_matroid(om)
    if euc_res.witness:
        witnesses["euclidean"] = euc_res.witness
    count = simplicial_tope_count(om)
    return ClassificationReport(
        id=entry.id,
        n=om.n,
        r=om.rank,
        uniform=om.is_uniform(),
        hk=hk,
        hkstar=hkstar,
        euclidean=euc_res.holds,
        shannon=count >= 2 * om.n,
        simplicial_tope_count=count,
        witnesses=witnesses or None,
        timing=time.perf_counter() - t0,
    )


class CatalogReader:
    """Streaming ``[tag ]n r signs`` parser.

    Blank lines and ``#`` comments are ignored; malformed lines are
    skipped, counted, and reported in ``diagnostics`` with line numbers.
    """

    def __init__(self, path: str):
        self.path = path
        self.skipped = 0
        self.diagnostics: List[str] = []

    def __iter__(self) -> Iterator[CatalogEntry]:
        with open(self.path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                entry = self._parse(line, lineno)
                if entry is not None:
                    yield entry

    def _parse(self, line: str, lineno: int) -> Optional[CatalogEntry]:
        parts = line.split()
        tag = None
        if len(parts) == 4:
            tag, parts = parts[0], parts[1:]
        if len(parts) != 3:
            self._bad(lineno, "expected '[tag ]n r signs'")
            return None
        try:
            n, r = int(parts[0]), int(parts[1])
        except ValueError:
            self._bad(lineno, f"non-integer n or r in {parts[0]!r} {parts[1]!r}")
            return None
        try:
            Chirotope(n, r, tuple({"+": 1, "-": -1, "0": 0}[c] for c in parts[2]))
        except KeyError:
            self._bad(lineno, "signs must use only '+', '-' and '0'")
            return None
        except ValueError as exc:
            self._bad(lineno, str(exc))
            return None
        return CatalogEntry(tag or f"line{lineno}", n, r, parts[2], lineno)

    def _bad(self, lineno: int, msg: str) -> None:
        self.skipped += 1
        self.diagnostics.append(f"line {lineno}: {msg}")


def ingest_catalog(path: str) -> CatalogReader:
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    return CatalogReader(path)


def _worker(args: Tuple[int, CatalogEntry, str]) -> Tuple[int, dict]:
    idx, entry, mode = args
    try:
        return idx, classify_one(entry, mode).to_json()
    except Exception as exc:  # recorded per entry, never kills the batch
        return idx, {"id": entry.id, "error": str(exc)}


def _row_of(rec: dict) -> Tuple[str, ...]:
    if "error" in rec:
        return (rec["id"], "", "", "", "", "", "", "", "", f"ERROR: {rec['error']}")
    wit = ""
    if rec.get("witnesses"):
        wit = json.dumps(rec["witnesses"], sort_keys=True, separators=(",", ":"))
    return (
        rec["id"],
        str(rec["n"]),
        str(rec["r"]),
        str(rec["uniform"]).lower(),
        str(rec["hk"]).lower(),
        str(rec["hkstar"]).lower(),
        str(rec["euclidean"]).lower(),
        str(rec["shannon"]).lower(),
        str(rec["simplicial_tope_count"]),
        wit,
    )


def _catalog_digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _load_checkpoint(path: Optional[str], digest: str, mode: str) -> Dict[int, dict]:
    if not path or not os.path.exists(path):
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return {}
    if data.get("catalog_sha256") != digest or data.get("mode") != mode:
        return {}
    return {int(k): v for k, v in data.get("rows", {}).items()}


def _save_checkpoint(path: str, digest: str, mode: str, rows: Dict[int, dict]) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(
            {
                "catalog_sha256": digest,
                "mode": mode,
                "rows": {str(k): v for k, v in rows.items()},
            },
            fh,
        )
    os.replace(tmp, path)


@dataclass
class BatchResult:
    aggregate: Dict[str, int]
    rows: List[dict] = field(repr=False, default_factory=list)
    skipped_lines: int = 0
    diagnostics: List[str] = field(default_factory=list)


def batch_classify(
    catalog: str,
    mode: str = "quick",
    jobs: int = 1,
    out: Optional[str] = None,
    checkpoint: Optional[str] = None,
    checkpoint_every: int = 25,
) -> BatchResult:
    """Classify every catalog entry, in file order.

    Rows land in the output in catalog order no matter how the pool
    schedules them.  With a checkpoint file the run resumes where it
    left off, provided the catalog bytes and mode are unchanged.
    """
    reader = ingest_catalog(catalog)
    entries = list(reader)
    digest = _catalog_digest(catalog)
    done = _load_checkpoint(checkpoint, digest, mode)
    done = {k: v for k, v in done.items() if k < len(entries)}

    pending = [(i, e, mode) for i, e in enumerate(entries) if i not in done]
    if jobs <= 1:
        for task in pending:
            idx, rec = _worker(task)
            done[idx] = rec
            if checkpoint and len(done) % checkpoint_every == 0:
                _save_checkpoint(checkpoint, digest, mode, done)
    elif pending:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_worker, t) for t in pending}
            since_save = 0
            while futures:
                finished, futures = wait(futures, return_when=FIRST_COMPLETED)
                for fut in finished:
                    idx, rec = fut.result()
                    done[idx] = rec
                    since_save += 1
                if checkpoint and since_save >= checkpoint_every:
                    _save_checkpoint(checkpoint, digest, mode, done)
                    since_save = 0
    if checkpoint:
        _save_checkpoint(checkpoint, digest, mode, done)

    rows = [done[i] for i in range(len(entries))]
    agg = {
        "entries": len(rows),
        "errors": sum(1 for r in rows if "error" in r),
        "skipped_lines": reader.skipped,
        "uniform": 0,
        "non_hk": 0,
        "non_hkstar": 0,
        "non_euclidean": 0,
        "non_shannon": 0,
    }
    for r in rows:
        if "error" in r:
            continue
        agg["uniform"] += r["uniform"]
        agg["non_hk"] += not r["hk"]
        agg["non_hkstar"] += not r["hkstar"]
        agg["non_euclidean"] += not r["euclidean"]
        agg["non_shannon"] += not r["shannon"]

    if out:
        _write_outputs(out, rows, agg)
    return BatchResult(agg, rows, reader.skipped, list(reader.diagnostics))


def _write_outputs(out: str, rows: List[dict], agg: Dict[str, int]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in rows:
        w.writerow(_row_of(rec))
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(buf.getvalue())
    base, ext = os.path.splitext(out)
    mirror = base + ".json" if ext.lower() == ".csv" else out + ".json"
    with open(mirror, "w", encoding="utf-8") as fh:
        json.dump({"aggregate": agg, "rows": rows}, fh, indent=1)
