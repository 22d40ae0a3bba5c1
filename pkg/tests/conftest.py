"""Shared fixtures: the seed repository, repo writers, and a synthetic
12-reference corpus with hand-counted expected statistics."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from reqont.repository import LoadedRepository, load_repository
from reqont.schema import TaxonomySchema, parse_structure

SEED_DIR = Path(__file__).resolve().parent.parent / "seed"


def schema_from_dict(structure: dict) -> TaxonomySchema:
    return parse_structure(json.dumps(structure), path="<test>")


@pytest.fixture(scope="session")
def seed_repo() -> LoadedRepository:
    return load_repository(SEED_DIR)


@pytest.fixture(scope="session")
def seed_snapshot(seed_repo):
    return seed_repo.snapshot


def write_repo(
    root: Path,
    structure: dict,
    extractions: dict[str, dict],
    iterations: dict | None = None,
    manifest: dict | None = None,
) -> Path:
    """Write a repository directory from plain dicts; returns its root."""
    root.mkdir(parents=True, exist_ok=True)
    (root / "structure.json").write_text(json.dumps(structure, indent=2), encoding="utf-8")
    extractions_dir = root / "extractions"
    extractions_dir.mkdir(exist_ok=True)
    for name, record in extractions.items():
        (extractions_dir / f"{name}.json").write_text(
            json.dumps(record, indent=2, ensure_ascii=False), encoding="utf-8"
        )
    if iterations is not None:
        (root / "iterations.json").write_text(json.dumps(iterations, indent=2), encoding="utf-8")
    if manifest is not None:
        (root / "manifest.json").write_text(json.dumps(manifest, indent=2), encoding="utf-8")
    return root


def seed_structure() -> dict:
    return json.loads((SEED_DIR / "structure.json").read_text(encoding="utf-8"))


# --- synthetic corpus ----------------------------------------------------------
#
# Twelve references over the seed schema. Expected numbers, counted by
# hand when this corpus was designed:
#   references 12, references with factor 11 (r12 carries only resources)
#   factors 8 (alpha..theta; delta implicit), descriptions 12
#   histogram: six factors with 1 description, two (alpha, beta) with 3
#   datasets 4 (1 public), approaches 3 (2 public)
#   descriptions with evidence or practitioners 4, with impact 3
#   gaps: factors without approach 5 (beta gamma delta theta zeta),
#         without dataset 4 (beta delta epsilon eta),
#         descriptions without evidence 8, without impact 9,
#         undisclosed resources 1 (ds3)

SYNTHETIC_STATS = {
    "n_references": 12,
    "n_references_with_factor": 11,
    "n_factors": 8,
    "n_descriptions": 12,
    "n_datasets": 4,
    "n_approaches": 3,
    "n_datasets_public": 1,
    "n_approaches_public": 2,
    "n_descriptions_with_evidence_or_practitioners": 4,
    "n_descriptions_with_impact": 3,
    "description_count_histogram": {"1": 6, "3": 2},
}

SYNTHETIC_GAP_COUNTS = {
    "factors_without_approach": 5,
    "factors_without_dataset": 4,
    "descriptions_without_evidence": 8,
    "descriptions_without_impact": 9,
    "undisclosed_resources": 1,
}


def _reference(key: str, year: int, authors: list[str]) -> dict:
    return {
        "key": key,
        "title": f"Study {key}",
        "authors": authors,
        "year": year,
        "venue": "Journal of Synthetic Examples",
    }


def _factor(slug: str, scope: str) -> dict:
    return {
        "id": f"factor:{slug}",
        "taxonomy": "factor",
        "values": {"scope": scope},
        "notes": {"name": slug},
    }


def _description(
    slug: str,
    n: int,
    factor: str,
    *,
    evidence: bool = False,
    practitioners: bool = False,
    impact: str = "",
) -> dict:
    values = {}
    if evidence:
        values["empirical evidence"] = "yes"
    if practitioners:
        values["practitioners involved"] = "yes"
    notes = {"definition": f"What {factor} means, according to this study ({slug}-d{n})."}
    if impact:
        notes["impact"] = impact
    return {
        "id": f"description:{slug}-d{n}",
        "taxonomy": "description",
        "values": values,
        "notes": notes,
        "relations": {"describes": [factor]},
    }


def _dataset(slug: str, accessibility: str, factor: str) -> dict:
    return {
        "id": f"dataset:{slug}",
        "taxonomy": "dataset",
        "values": {
            "origin": "academic data",
            "granularity": "sentence",
            "accessibility": accessibility,
        },
        "notes": {"name": slug},
        "relations": {"annotates": [factor]},
    }


def _approach(slug: str, accessibility: str, automates: list[str]) -> dict:
    return {
        "id": f"approach:{slug}",
        "taxonomy": "approach",
        "values": {"type": "rule-based", "accessibility": accessibility},
        "notes": {"name": slug},
        "relations": {"automates": automates},
    }


def synthetic_extractions() -> dict[str, dict]:
    return {
        "r01": {
            "reference": _reference("r01", 2015, ["Doe, Jane", "Poe, Anna"]),
            "objects": [
                _factor("alpha", "word"),
                _factor("beta", "phrase"),
                _description("alpha", 1, "alpha", evidence=True, impact="hurts readability"),
                _description("beta", 1, "beta", evidence=True, practitioners=True, impact="slows reviews"),
            ],
        },
        "r02": {
            "reference": _reference("r02", 2016, ["Doe, Jane"]),
            "objects": [
                _description("alpha", 2, "alpha", evidence=True, practitioners=True),
                _dataset("ds1", "available in paper", "alpha"),
            ],
        },
        "r03": {
            "reference": _reference("r03", 2017, ["Roe, Riley"]),
            "objects": [
                _description("alpha", 3, "alpha"),
                _approach("ap1", "open source", ["description:alpha-d3"]),
            ],
        },
        "r04": {
            "reference": _reference("r04", 2018, ["Loe, Lou"]),
            "objects": [_description("beta", 2, "beta")],
        },
        "r05": {
            "reference": _reference("r05", 2018, ["Moe, Max"]),
            "objects": [_description("beta", 3, "beta")],
        },
        "r06": {
            "reference": _reference("r06", 2019, ["Noe, Nic"]),
            "objects": [
                _factor("gamma", "sentence"),
                _description("gamma", 1, "gamma", impact="breaks traceability"),
                _dataset("ds2", "private", "gamma"),
            ],
        },
        "r07": {
            "reference": _reference("r07", 2019, ["Poe, Anna"]),
            "objects": [_description("delta", 1, "delta")],
        },
        "r08": {
            "reference": _reference("r08", 2020, ["Quin, Ash"]),
            "objects": [
                _factor("epsilon", "paragraph"),
                _description("epsilon", 1, "epsilon", evidence=True),
                _approach("ap2", "open access", ["description:epsilon-d1"]),
            ],
        },
        "r09": {
            "reference": _reference("r09", 2021, ["Soe, Sam"]),
            "objects": [
                _factor("zeta", "section"),
                _description("zeta", 1, "zeta"),
                _dataset("ds4", "upon request", "zeta"),
            ],
        },
        "r10": {
            "reference": _reference("r10", 2022, ["Toe, Tam"]),
            "objects": [
                _factor("eta", "use case"),
                _description("eta", 1, "eta"),
            ],
        },
        "r11": {
            "reference": _reference("r11", 2022, ["Uma, Vic"]),
            "objects": [
                _factor("theta", "document"),
                _description("theta", 1, "theta"),
            ],
        },
        "r12": {
            "reference": _reference("r12", 2023, ["Woe, Zoe"]),
            "objects": [
                _dataset("ds3", "not disclosed", "theta"),
                _approach("ap3", "proprietary", ["r10#description:eta-d1"]),
            ],
        },
    }


@pytest.fixture(scope="session")
def synthetic_repo_path(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("synthetic")
    return write_repo(root / "repo", seed_structure(), synthetic_extractions())


@pytest.fixture(scope="session")
def synthetic_repo(synthetic_repo_path) -> LoadedRepository:
    return load_repository(synthetic_repo_path)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Render one PASS/FAIL line per acceptance criterion after each run."""
    outcomes: dict[str, str] = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            if status == "passed" and getattr(report, "when", "call") != "call":
                continue
            name = nodeid.split("::")[-1].split("[")[0]
            outcomes[name] = "PASS" if status == "passed" else "FAIL"
    if not outcomes:
        return
    import test_acceptance

    terminalreporter.section("acceptance criteria")
    for name, (label, tolerance, budget) in test_acceptance.CRITERIA.items():
        verdict = outcomes.get(name, "NOT RUN")
        terminalreporter.write_line(
            f"{verdict:7s} {label} [tolerance: {tolerance}; budget {budget:g}s]"
        )
