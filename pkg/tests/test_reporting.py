"""Report rendering: delimited outputs and figure files."""

from __future__ import annotations

import csv

from reqont.reporting import write_report

from conftest import SYNTHETIC_STATS

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def test_report_files(tmp_path, synthetic_repo):
    out = tmp_path / "report"
    written = write_report(synthetic_repo.snapshot, out)
    names = {p.name for p in out.iterdir()}
    assert names == {
        "summary.csv",
        "factors.csv",
        "gaps.csv",
        "descriptions_per_factor.png",
        "factor_scopes.png",
        "resource_accessibility.png",
    }
    assert {p.name for p in written} == names
    for png in out.glob("*.png"):
        assert png.read_bytes()[:8] == PNG_MAGIC
        assert png.stat().st_size > 1000


def test_summary_csv_contents(tmp_path, synthetic_repo):
    out = tmp_path / "report"
    write_report(synthetic_repo.snapshot, out)
    with (out / "summary.csv").open(newline="", encoding="utf-8") as fh:
        rows = {row["metric"]: row["value"] for row in csv.DictReader(fh)}
    assert rows["n_references"] == str(SYNTHETIC_STATS["n_references"])
    assert rows["n_factors"] == str(SYNTHETIC_STATS["n_factors"])
    assert rows["n_descriptions"] == str(SYNTHETIC_STATS["n_descriptions"])


def test_factors_csv_contents(tmp_path, synthetic_repo):
    out = tmp_path / "report"
    write_report(synthetic_repo.snapshot, out)
    with (out / "factors.csv").open(newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == SYNTHETIC_STATS["n_factors"]
    by_key = {row["key"]: row for row in rows}
    assert by_key["alpha"]["n_descriptions"] == "3"
    assert by_key["alpha"]["n_datasets"] == "1"
    assert by_key["alpha"]["n_approaches"] == "1"
    assert by_key["delta"]["implicit"] == "yes"
    assert by_key["alpha"]["implicit"] == "no"


def test_gaps_csv_contents(tmp_path, synthetic_repo):
    out = tmp_path / "report"
    write_report(synthetic_repo.snapshot, out)
    with (out / "gaps.csv").open(newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    kinds = {row["gap"] for row in rows}
    assert "factor-without-approach" in kinds
    assert "factor-without-dataset" in kinds
    without_approach = [r for r in rows if r["gap"] == "factor-without-approach"]
    assert len(without_approach) == 5


def test_report_overwrites_cleanly(tmp_path, synthetic_repo):
    out = tmp_path / "report"
    write_report(synthetic_repo.snapshot, out)
    first = (out / "summary.csv").read_bytes()
    write_report(synthetic_repo.snapshot, out)
    assert (out / "summary.csv").read_bytes() == first


def test_report_empty_corpus(tmp_path, seed_repo):
    from reqont.snapshot import build_snapshot

    empty = build_snapshot(seed_repo.schema, [], strict=False)
    out = tmp_path / "report"
    write_report(empty, out)
    # figures fall back to a "no data" placeholder instead of failing
    for png in out.glob("*.png"):
        assert png.read_bytes()[:8] == PNG_MAGIC
