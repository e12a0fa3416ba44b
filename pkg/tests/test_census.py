import json

import pytest

from omhk.census import (
    CatalogEntry,
    batch_classify,
    classify_one,
    ingest_catalog,
    is_shannon,
    simplicial_tope_count,
)
from omhk.fixtures import all_plus, ic842


def _entry(tag, chi):
    line = chi.to_line().split()
    return CatalogEntry(tag, int(line[0]), int(line[1]), line[2])


def test_simplicial_tope_counts(ic842_om, all_plus84_om):
    assert simplicial_tope_count(ic842_om) == 14
    assert simplicial_tope_count(all_plus84_om) == 16
    assert not is_shannon(ic842_om)       # 14 < 2 * 8
    assert is_shannon(all_plus84_om)      # 16 >= 2 * 8


def test_classify_one_full_mode_anchors():
    rep = classify_one(_entry("ic842", ic842()), mode="full")
    assert rep.n == 8 and rep.r == 4
    assert rep.uniform
    assert rep.hk and not rep.hkstar
    assert not rep.euclidean and not rep.shannon
    assert rep.simplicial_tope_count == 14
    assert rep.witnesses["hkstar"]["T"] == [1, 8]
    assert rep.witnesses["euclidean"] == {"g": 1, "f": 8}
    assert "hk" not in rep.witnesses
    assert rep.timing > 0

    ap = classify_one(_entry("alt", all_plus(8, 4)), mode="full")
    assert ap.uniform and ap.hk and ap.hkstar and ap.euclidean and ap.shannon
    assert ap.simplicial_tope_count == 16
    assert ap.witnesses is None


def test_classify_one_quick_matches_full_on_these_entries():
    quick = classify_one(_entry("ic842", ic842()), mode="quick")
    assert quick.hk and not quick.hkstar
    assert not quick.euclidean


def test_rank3_entries_skip_the_sweeps():
    from omhk.fixtures import rank3_shelling

    rep = classify_one(_entry("r3", rank3_shelling()), mode="full")
    assert rep.hk and rep.hkstar
    assert rep.r == 3


def test_classify_one_rejects_bad_mode_and_bad_entry():
    with pytest.raises(ValueError):
        classify_one(_entry("x", ic842()), mode="medium")
    with pytest.raises(ValueError):
        classify_one(CatalogEntry("broken", 4, 2, "+0-"), mode="quick")


def test_to_row_and_json_round_trip():
    rep = classify_one(_entry("ic842", ic842()), mode="quick")
    row = rep.to_row()
    assert row[0] == "ic842" and row[3] == "true" and row[5] == "false"
    payload = rep.to_json()
    assert json.loads(json.dumps(payload))["simplicial_tope_count"] == 14


# -- catalog files --------------------------------------------------------


CATALOG_TEXT = """\
# demo catalog
ic842 {ic}
{ap}

oops 8 4
bad-signs 4 2 ++*+++
alt4 4 2 ++++++
"""


@pytest.fixture()
def catalog_file(tmp_path):
    chi = ic842().to_line()
    ap = all_plus(4, 2).to_line()
    path = tmp_path / "catalog.txt"
    path.write_text(CATALOG_TEXT.format(ic=" ".join(chi.split()[0:]), ap=ap))
    return str(path)


def test_reader_parses_and_reports_bad_lines(catalog_file):
    reader = ingest_catalog(catalog_file)
    entries = list(reader)
    assert [e.id for e in entries] == ["ic842", "line3", "alt4"]
    assert entries[0].chirotope() == ic842()
    assert reader.skipped == 2
    assert any("line 5" in d for d in reader.diagnostics)
    assert any("line 6" in d for d in reader.diagnostics)


def test_ingest_missing_catalog():
    with pytest.raises(FileNotFoundError):
        ingest_catalog("/nonexistent/catalog.txt")


def test_batch_classify_serial_and_parallel_agree(catalog_file, tmp_path):
    serial = batch_classify(catalog_file, mode="quick", jobs=1)
    parallel = batch_classify(catalog_file, mode="quick", jobs=2)
    strip = lambda rows: [
        {k: v for k, v in r.items() if k != "timing"} for r in rows
    ]
    assert strip(serial.rows) == strip(parallel.rows)
    assert serial.aggregate["entries"] == 3
    assert serial.aggregate["skipped_lines"] == 2
    assert serial.aggregate["non_hkstar"] == 1
    assert serial.aggregate["uniform"] == 3
    assert serial.skipped_lines == 2 and len(serial.diagnostics) == 2


def test_batch_classify_writes_csv_and_summary(catalog_file, tmp_path):
    out = tmp_path / "report.csv"
    res = batch_classify(catalog_file, mode="quick", jobs=1, out=str(out))
    text = out.read_text().splitlines()
    assert text[0].startswith("id,")
    assert len(text) == 1 + len(res.rows)
    mirror = out.with_suffix(".json")
    assert mirror.exists()
    payload = json.loads(mirror.read_text())
    assert payload["aggregate"]["entries"] == 3
    assert len(payload["rows"]) == 3


def test_checkpoint_resume_skips_finished_rows(catalog_file, tmp_path):
    ck = tmp_path / "ck.json"
    first = batch_classify(catalog_file, mode="quick", jobs=1,
                           checkpoint=str(ck), checkpoint_every=1)
    assert ck.exists()
    stamp = json.loads(ck.read_text())
    assert len(stamp["rows"]) == 3

    # resumed run must reuse the stored rows rather than recomputing
    second = batch_classify(catalog_file, mode="quick", jobs=1,
                            checkpoint=str(ck))
    assert [r["id"] for r in second.rows] == [r["id"] for r in first.rows]
    assert [r["timing"] for r in second.rows] == [r["timing"] for r in first.rows]


def test_checkpoint_is_mode_and_content_keyed(catalog_file, tmp_path):
    ck = tmp_path / "ck.json"
    first = batch_classify(catalog_file, mode="quick", jobs=1,
                           checkpoint=str(ck))
    refreshed = batch_classify(catalog_file, mode="full", jobs=1,
                               checkpoint=str(ck))
    # a different mode invalidates the stored rows, timings are fresh
    assert [r["timing"] for r in refreshed.rows] != [
        r["timing"] for r in first.rows
    ]
