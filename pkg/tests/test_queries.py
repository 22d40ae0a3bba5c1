"""Queries, gap analysis, author index, and summary statistics over the
twelve-reference synthetic corpus with hand-counted expectations."""

from __future__ import annotations

import pytest

from reqont.errors import UnknownCharacteristic, UnknownFactor
from reqont.queries import (
    FactorFilter,
    author_index,
    gap_report,
    query_factors,
    resources_for_factor,
    summary_stats,
    validate_filter,
)
from reqont.validation import validate_corpus

from conftest import SYNTHETIC_GAP_COUNTS, SYNTHETIC_STATS


@pytest.fixture(scope="module")
def snap(synthetic_repo):
    return synthetic_repo.snapshot


def test_synthetic_corpus_is_clean(synthetic_repo):
    report = validate_corpus(synthetic_repo.snapshot)
    assert not report.has_errors()
    # no warnings either; only the duplicate-cell info lint may fire
    assert all(f.severity == "info" for f in report.all_findings())


# --- summary statistics -----------------------------------------------------------


def test_summary_stats_hand_counts(snap):
    stats = summary_stats(snap)
    assert stats.n_references == SYNTHETIC_STATS["n_references"]
    assert stats.n_references_with_factor == SYNTHETIC_STATS["n_references_with_factor"]
    assert stats.n_factors == SYNTHETIC_STATS["n_factors"]
    assert stats.n_descriptions == SYNTHETIC_STATS["n_descriptions"]
    assert stats.n_datasets == SYNTHETIC_STATS["n_datasets"]
    assert stats.n_approaches == SYNTHETIC_STATS["n_approaches"]
    assert stats.n_datasets_public == SYNTHETIC_STATS["n_datasets_public"]
    assert stats.n_approaches_public == SYNTHETIC_STATS["n_approaches_public"]
    assert (
        stats.n_descriptions_with_evidence_or_practitioners
        == SYNTHETIC_STATS["n_descriptions_with_evidence_or_practitioners"]
    )
    assert stats.n_descriptions_with_impact == SYNTHETIC_STATS["n_descriptions_with_impact"]
    histogram = {str(k): v for k, v in stats.description_count_histogram.items()}
    assert histogram == SYNTHETIC_STATS["description_count_histogram"]


def test_implicit_factor_counted(snap):
    node = snap.resolve_factor("delta")
    assert node is not None and node.implicit is True


# --- gaps -------------------------------------------------------------------------


def test_gap_report_hand_counts(snap):
    gaps = gap_report(snap)
    assert [e.factor_key for e in gaps.factors_without_approach] == [
        "beta",
        "delta",
        "gamma",
        "theta",
        "zeta",
    ]
    assert [e.factor_key for e in gaps.factors_without_dataset] == [
        "beta",
        "delta",
        "epsilon",
        "eta",
    ]
    assert len(gaps.factors_without_approach) == SYNTHETIC_GAP_COUNTS["factors_without_approach"]
    assert len(gaps.factors_without_dataset) == SYNTHETIC_GAP_COUNTS["factors_without_dataset"]
    assert (
        len(gaps.descriptions_without_evidence)
        == SYNTHETIC_GAP_COUNTS["descriptions_without_evidence"]
    )
    assert (
        len(gaps.descriptions_without_impact)
        == SYNTHETIC_GAP_COUNTS["descriptions_without_impact"]
    )
    assert len(gaps.undisclosed_resources) == SYNTHETIC_GAP_COUNTS["undisclosed_resources"]
    assert gaps.undisclosed_resources[0].object_id == "dataset:ds3"


# --- filtering --------------------------------------------------------------------


def test_filter_by_scope(snap):
    hits = query_factors(snap, FactorFilter(scope="word"))
    assert [n.key for n in hits] == ["alpha"]


def test_filter_conjunction(snap):
    # factors having both a dataset and an approach
    hits = query_factors(snap, FactorFilter(has_approach=True, has_dataset=True))
    assert [n.key for n in hits] == ["alpha"]
    hits = query_factors(snap, FactorFilter(has_approach=True, has_dataset=False))
    assert [n.key for n in hits] == ["epsilon", "eta"]


def test_filter_text_query_searches_names_and_definitions(snap):
    hits = query_factors(snap, FactorFilter(text_query="EPSILON"))
    assert [n.key for n in hits] == ["epsilon"]
    # definitions mention the factor name; a word only used in definitions
    hits = query_factors(snap, FactorFilter(text_query="according to this study"))
    assert len(hits) == 8


def test_filter_by_evidence_and_practitioners(snap):
    hits = query_factors(snap, FactorFilter(evidence=True))
    assert [n.key for n in hits] == ["alpha", "beta", "epsilon"]
    hits = query_factors(snap, FactorFilter(practitioners=True))
    assert [n.key for n in hits] == ["alpha", "beta"]


def test_filter_by_accessibility(snap):
    hits = query_factors(snap, FactorFilter(accessibility="open source"))
    assert [n.key for n in hits] == ["alpha"]
    hits = query_factors(snap, FactorFilter(accessibility="not disclosed"))
    assert [n.key for n in hits] == ["theta"]


def test_filter_unknown_vocabulary_raises(snap):
    with pytest.raises(UnknownCharacteristic):
        validate_filter(snap, FactorFilter(scope="galaxy"))
    with pytest.raises(UnknownCharacteristic):
        validate_filter(snap, FactorFilter(accessibility="by-pigeon"))
    validate_filter(snap, FactorFilter(scope="word"))


def test_filter_no_hits_is_empty(snap):
    assert query_factors(snap, FactorFilter(scope="phrase", has_approach=True)) == ()


# --- resources --------------------------------------------------------------------


def test_resources_for_factor(snap):
    res = resources_for_factor(snap, "alpha")
    assert res.node.key == "alpha"
    assert [d.obj.id for d in res.descriptions] == [
        "description:alpha-d1",
        "description:alpha-d2",
        "description:alpha-d3",
    ]
    assert [d.obj.id for d in res.datasets] == ["dataset:ds1"]
    assert [a.obj.id for a in res.approaches] == ["approach:ap1"]
    assert res.references == ("r01", "r02", "r03")


def test_resources_unknown_factor_raises(snap):
    with pytest.raises(UnknownFactor):
        resources_for_factor(snap, "does not exist")


def test_resources_via_cross_reference(snap):
    # ap3 automates eta's description through an explicit reference prefix
    res = resources_for_factor(snap, "eta")
    assert [a.obj.id for a in res.approaches] == ["approach:ap3"]


# --- authors ----------------------------------------------------------------------


def test_author_index(snap):
    entries = author_index(snap)
    by_name = {e.author: e for e in entries}
    assert by_name["Doe, Jane"].references == ("r01", "r02")
    assert by_name["Poe, Anna"].references == ("r01", "r07")
    # sorted by author name
    names = [e.author for e in entries]
    assert names == sorted(names)
