"""Similarity and inter-annotator agreement tests.

The similarity tests check the shipped implementation against an
independently written brute-force oracle (quadratic longest-block scan,
recursive divide) rather than against the implementation's own internals.
"""

from __future__ import annotations

import difflib
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reqont.agreement import (
    AgreementReport,
    agreement_report,
    align_objects,
    format_agreement,
    similarity,
)
from reqont.errors import DuplicateReference, EmptyComparison, ReferenceMismatch
from reqont.records import ExtractionRecord, OntologyObject, Reference

from conftest import schema_from_dict

# --- brute-force oracle ---------------------------------------------------------


def _oracle_block(a: str, b: str, alo: int, ahi: int, blo: int, bhi: int):
    """Longest common block by scanning every start pair; ties resolve to
    the smallest start in the first text, then in the second."""
    best_i, best_j, best_k = alo, blo, 0
    for i in range(alo, ahi):
        for j in range(blo, bhi):
            k = 0
            while i + k < ahi and j + k < bhi and a[i + k] == b[j + k]:
                k += 1
            if k > best_k:
                best_i, best_j, best_k = i, j, k
    return best_i, best_j, best_k


def _oracle_matched(a: str, b: str) -> int:
    total = 0
    stack = [(0, len(a), 0, len(b))]
    while stack:
        alo, ahi, blo, bhi = stack.pop()
        i, j, k = _oracle_block(a, b, alo, ahi, blo, bhi)
        if k == 0:
            continue
        total += k
        stack.append((alo, i, blo, j))
        stack.append((i + k, ahi, j + k, bhi))
    return total


def _oracle_directed(a: str, b: str) -> float:
    if not a and not b:
        return 1.0
    return 2.0 * _oracle_matched(a, b) / (len(a) + len(b))


def oracle_similarity(a: str, b: str) -> float:
    if a == b:
        return 1.0
    return max(_oracle_directed(a, b), _oracle_directed(b, a))


# --- similarity -----------------------------------------------------------------


def _all_pairs_upto_combined(alphabet: str, combined: int):
    texts_by_len = [
        ["".join(p) for p in itertools.product(alphabet, repeat=n)]
        for n in range(combined + 1)
    ]
    for la in range(combined + 1):
        for lb in range(combined + 1 - la):
            for a in texts_by_len[la]:
                for b in texts_by_len[lb]:
                    yield a, b


def test_similarity_matches_oracle_exhaustively():
    # every ordered pair over {a, b, c} with combined length <= 8:
    # sum over n of (n + 1) * 3^n = 83,653 pairs. The same sweep also
    # cross-checks the one-directed ratio against difflib with junk
    # detection off, which computes the same quantity.
    from reqont.agreement import _directed_ratio

    n = 0
    for a, b in _all_pairs_upto_combined("abc", 8):
        assert abs(similarity(a, b) - oracle_similarity(a, b)) <= 1e-12, (a, b)
        expected = difflib.SequenceMatcher(None, a, b, autojunk=False).ratio()
        assert abs(_directed_ratio(a, b) - expected) <= 1e-12, (a, b)
        n += 1
    assert n == 83653


def test_similarity_pinned_values():
    assert similarity("", "") == 1.0
    assert similarity("abc", "abc") == 1.0
    assert similarity("ab", "cd") == 0.0
    assert abs(similarity("abcd", "bcde") - 0.75) <= 1e-12
    # a case where the two directions disagree; the larger one is reported
    assert abs(similarity("ab", "bacb") - 2 / 3) <= 1e-12
    assert abs(similarity("bacb", "ab") - 2 / 3) <= 1e-12


def test_similarity_symmetry_and_identity_random():
    rng = random.Random(20240817)
    alphabet = "abcdefg "
    for _ in range(1000):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 30)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 30)))
        sab = similarity(a, b)
        assert sab == similarity(b, a)
        assert 0.0 <= sab <= 1.0
        assert similarity(a, a) == 1.0


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="abc", max_size=12), st.text(alphabet="abc", max_size=12))
def test_similarity_matches_oracle_property(a, b):
    assert abs(similarity(a, b) - oracle_similarity(a, b)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=20), st.text(max_size=20))
def test_similarity_bounds_property(a, b):
    s = similarity(a, b)
    assert 0.0 <= s <= 1.0
    assert s == similarity(b, a)
    if a == b:
        assert s == 1.0


# --- agreement over corpora -----------------------------------------------------

AGREEMENT_STRUCTURE = {
    "version": 1,
    "taxonomies": [
        {
            "name": "factor",
            "dimensions": [
                {"name": f"d{i}", "characteristics": ["x", "y"], "default": "x"}
                for i in range(1, 6)
            ],
            "scope_notes": [{"name": "name", "required": True}],
            "relations": [],
        }
    ],
}


def _record(key: str, objects: list[OntologyObject]) -> ExtractionRecord:
    ref = Reference(key=key, title="t", authors=("A",), year=2020, venue="v")
    return ExtractionRecord(reference=ref, objects=tuple(objects))


def _factor_obj(values: dict, name: str = "x") -> OntologyObject:
    return OntologyObject(
        id="factor:f1",
        taxonomy="factor",
        values=dict(values),
        notes={"name": name},
        relations={},
    )


@pytest.fixture(scope="module")
def agreement_schema():
    return schema_from_dict(AGREEMENT_STRUCTURE)


def test_agreement_five_of_six(agreement_schema):
    # five dimensions plus the name note: four dimensions and the note agree,
    # one dimension differs, so 5/6 of the values match
    base = {f"d{i}": "x" for i in range(1, 6)}
    other = dict(base)
    other["d5"] = "y"
    a = [_record("r1", [_factor_obj(base)])]
    b = [_record("r1", [_factor_obj(other)])]
    report = agreement_report(a, b, agreement_schema)
    assert report.n_values == 6
    assert abs(report.mean_agreement - 100.0 * 5 / 6) <= 0.01
    assert report.common_references == ("r1",)
    assert not report.unmatched_a and not report.unmatched_b


def test_agreement_identical_corpora(agreement_schema):
    base = {f"d{i}": "x" for i in range(1, 6)}
    a = [_record("r1", [_factor_obj(base)])]
    b = [_record("r1", [_factor_obj(base)])]
    report = agreement_report(a, b, agreement_schema)
    assert report.mean_agreement == 100.0
    assert report.n_values == 6


def test_agreement_empty_objects_is_vacuous(agreement_schema):
    report = agreement_report([_record("r1", [])], [_record("r1", [])], agreement_schema)
    assert report.n_values == 0
    assert report.mean_agreement == 100.0


def test_agreement_unmatched_objects_score_zero(agreement_schema):
    base = {f"d{i}": "x" for i in range(1, 6)}
    extra = OntologyObject(
        id="factor:f2",
        taxonomy="factor",
        values=dict(base),
        relations={},
        notes={"name": "other"},
    )
    a = [_record("r1", [_factor_obj(base), extra])]
    b = [_record("r1", [_factor_obj(base)])]
    report = agreement_report(a, b, agreement_schema)
    # matched object contributes six 1.0 scores, the unmatched one six 0.0
    assert report.n_values == 12
    assert abs(report.mean_agreement - 50.0) <= 0.01
    assert report.unmatched_a == ("r1#factor:f2",)
    assert report.unmatched_b == ()


def test_agreement_partial_reference_overlap(agreement_schema):
    base = {f"d{i}": "x" for i in range(1, 6)}
    a = [_record("r1", [_factor_obj(base)]), _record("r2", [])]
    b = [_record("r1", [_factor_obj(base)]), _record("r3", [])]
    report = agreement_report(a, b, agreement_schema)
    assert report.common_references == ("r1",)
    assert report.only_in_a == ("r2",)
    assert report.only_in_b == ("r3",)


def test_agreement_no_common_references_raises(agreement_schema):
    with pytest.raises(EmptyComparison):
        agreement_report([_record("r1", [])], [_record("r2", [])], agreement_schema)


def test_agreement_duplicate_reference_raises(agreement_schema):
    with pytest.raises(DuplicateReference):
        agreement_report(
            [_record("r1", []), _record("r1", [])],
            [_record("r1", [])],
            agreement_schema,
        )


def test_align_objects_reference_mismatch(agreement_schema):
    with pytest.raises(ReferenceMismatch):
        align_objects(_record("r1", []), _record("r2", []), agreement_schema)


def test_headline_format():
    report = AgreementReport(
        n_values=799,
        mean_agreement=85.03,
        common_references=("r1",),
        only_in_a=(),
        only_in_b=(),
        unmatched_a=(),
        unmatched_b=(),
    )
    text = format_agreement(report)
    assert text.splitlines()[0] == "n=799, agreement=85.03%"


def test_agreement_order_independent(agreement_schema):
    base = {f"d{i}": "x" for i in range(1, 6)}
    other = dict(base)
    other["d1"] = "y"
    o1 = _factor_obj(base, name="one")
    o2 = OntologyObject(
        id="factor:f9",
        taxonomy="factor",
        values=other,
        relations={},
        notes={"name": "two"},
    )
    fwd = agreement_report(
        [_record("r1", [o1, o2])], [_record("r1", [o2, o1])], agreement_schema
    )
    assert fwd.mean_agreement == 100.0
