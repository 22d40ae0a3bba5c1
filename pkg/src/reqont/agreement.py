"""Inter-annotator agreement between two extraction corpora.

Objects are aligned per reference by identity (factors by normalized
name, descriptions by the factor they describe, everything else by its
name note or id), then compared attribute by attribute: dimension
values by equality, scope note texts by gestalt similarity scaled to
[0, 1]. Objects extracted by only one annotator score 0.0 on every
attribute they carry, and are listed so the penalty is visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import zip_longest
from typing import Iterable

from . import conventions as conv
from .errors import DuplicateReference, EmptyComparison, EmptyName, ReferenceMismatch
from .records import ExtractionRecord, OntologyObject, normalize_factor_name
from .schema import TaxonomySchema

KIND_DIMENSION = "dimension"
KIND_SCOPE_NOTE = "scope-note"


# --- text similarity -----------------------------------------------------------


def _longest_block(
    a: str, b: str, alo: int, ahi: int, blo: int, bhi: int
) -> tuple[int, int, int]:
    """Longest common contiguous block inside a[alo:ahi] x b[blo:bhi].

    Ties resolve to the smallest start in ``a``, then in ``b``: a block
    is recorded when its last character is reached, so among equal
    sizes the earliest-starting one wins under strict improvement.
    """
    b2j: dict[str, list[int]] = {}
    for j in range(blo, bhi):
        b2j.setdefault(b[j], []).append(j)
    besti, bestj, bestsize = alo, blo, 0
    j2len: dict[int, int] = {}
    for i in range(alo, ahi):
        newj2len: dict[int, int] = {}
        for j in b2j.get(a[i], ()):
            k = j2len.get(j - 1, 0) + 1
            newj2len[j] = k
            if k > bestsize:
                besti, bestj, bestsize = i - k + 1, j - k + 1, k
        j2len = newj2len
    return besti, bestj, bestsize


def _matched_total(a: str, b: str) -> int:
    """Total characters matched by recursive longest-block decomposition."""
    total = 0
    stack = [(0, len(a), 0, len(b))]
    while stack:
        alo, ahi, blo, bhi = stack.pop()
        if alo >= ahi or blo >= bhi:
            continue
        i, j, size = _longest_block(a, b, alo, ahi, blo, bhi)
        if size == 0:
            continue
        total += size
        stack.append((alo, i, blo, j))
        stack.append((i + size, ahi, j + size, bhi))
    return total


def _directed_ratio(a: str, b: str) -> float:
    if not a and not b:
        return 1.0
    return 2.0 * _matched_total(a, b) / (len(a) + len(b))


def similarity(a: str, b: str) -> float:
    """Gestalt similarity of two texts in [0, 1].

    Twice the recursively matched character count over the combined
    length. The greedy block decomposition depends on argument order on
    some inputs, so the result is the better of the two directions,
    making the function symmetric. 1.0 iff the texts are equal (two
    empty texts count as equal); no normalization is applied.
    """
    if a == b:
        return 1.0
    return max(_directed_ratio(a, b), _directed_ratio(b, a))


# --- alignment -------------------------------------------------------------------


@dataclass(frozen=True)
class ValueScore:
    """One compared attribute value."""

    reference: str
    taxonomy: str
    alignment_key: str
    kind: str
    attribute: str
    value_a: str | None
    value_b: str | None
    score: float


@dataclass(frozen=True)
class AlignedPair:
    """Two objects (or one object and a gap) matched across annotators."""

    taxonomy: str
    alignment_key: str
    a: OntologyObject | None
    b: OntologyObject | None


def _alignment_key(obj: OntologyObject, schema: TaxonomySchema) -> str:
    """Identity used to match objects across annotators."""
    if obj.taxonomy == conv.DESCRIPTION:
        tax = schema.taxonomy(obj.taxonomy)
        if tax is not None:
            for rel in tax.relations:
                if rel.target_taxonomy == conv.FACTOR:
                    targets = obj.relations.get(rel.name, ())
                    if targets:
                        try:
                            return "describes:" + normalize_factor_name(targets[0])
                        except EmptyName:
                            break
        return "id:" + obj.id
    name = obj.notes.get(conv.NAME_NOTE, "")
    try:
        return "name:" + normalize_factor_name(name)
    except EmptyName:
        return "id:" + obj.id


def align_objects(
    a: ExtractionRecord, b: ExtractionRecord, schema: TaxonomySchema
) -> tuple[AlignedPair, ...]:
    """Align the objects of two extractions of the same reference.

    Objects sharing (taxonomy, identity) pair up; surplus objects on
    either side pair with a gap. Several objects with the same identity
    are paired in id order.

    Raises:
        ReferenceMismatch: the records cite different references.
    """
    if a.reference.key != b.reference.key:
        raise ReferenceMismatch(
            f"cannot align {a.reference.key!r} with {b.reference.key!r}"
        )
    buckets: dict[tuple[str, str], tuple[list[OntologyObject], list[OntologyObject]]] = {}
    for side, record in ((0, a), (1, b)):
        for obj in record.objects:
            key = (obj.taxonomy, _alignment_key(obj, schema))
            bucket = buckets.setdefault(key, ([], []))
            bucket[side].append(obj)

    pairs = []
    for (taxonomy, key) in sorted(buckets):
        side_a, side_b = buckets[(taxonomy, key)]
        side_a.sort(key=lambda o: o.id)
        side_b.sort(key=lambda o: o.id)
        for obj_a, obj_b in zip_longest(side_a, side_b):
            pairs.append(AlignedPair(taxonomy=taxonomy, alignment_key=key, a=obj_a, b=obj_b))
    return tuple(pairs)


def score_pair(pair: AlignedPair, reference: str) -> tuple[ValueScore, ...]:
    """Score every comparable attribute of one aligned pair.

    Dimension values by equality; scope notes by :func:`similarity`.
    Attributes carried by only one side (including the whole object,
    when the other side is a gap) score 0.0.
    """
    values_a = pair.a.values if pair.a else {}
    values_b = pair.b.values if pair.b else {}
    notes_a = pair.a.notes if pair.a else {}
    notes_b = pair.b.notes if pair.b else {}

    scores = []
    for attribute in sorted(set(values_a) | set(values_b)):
        in_a, in_b = attribute in values_a, attribute in values_b
        if in_a and in_b:
            score = 1.0 if values_a[attribute] == values_b[attribute] else 0.0
        else:
            score = 0.0
        scores.append(
            ValueScore(
                reference=reference,
                taxonomy=pair.taxonomy,
                alignment_key=pair.alignment_key,
                kind=KIND_DIMENSION,
                attribute=attribute,
                value_a=values_a.get(attribute),
                value_b=values_b.get(attribute),
                score=score,
            )
        )
    for attribute in sorted(set(notes_a) | set(notes_b)):
        in_a, in_b = attribute in notes_a, attribute in notes_b
        if in_a and in_b:
            score = similarity(notes_a[attribute], notes_b[attribute])
        else:
            score = 0.0
        scores.append(
            ValueScore(
                reference=reference,
                taxonomy=pair.taxonomy,
                alignment_key=pair.alignment_key,
                kind=KIND_SCOPE_NOTE,
                attribute=attribute,
                value_a=notes_a.get(attribute),
                value_b=notes_b.get(attribute),
                score=score,
            )
        )
    return tuple(scores)


# --- reporting -------------------------------------------------------------------


@dataclass(frozen=True)
class AgreementReport:
    """Corpus-level agreement between two annotators."""

    n_values: int
    mean_agreement: float
    common_references: tuple[str, ...] = ()
    only_in_a: tuple[str, ...] = ()
    only_in_b: tuple[str, ...] = ()
    unmatched_a: tuple[str, ...] = ()
    unmatched_b: tuple[str, ...] = ()
    per_reference: dict[str, tuple[int, float]] = field(default_factory=dict)
    per_kind: dict[str, tuple[int, float]] = field(default_factory=dict)
    scores: tuple[ValueScore, ...] = ()


def _keyed(records: Iterable[ExtractionRecord], label: str) -> dict[str, ExtractionRecord]:
    out: dict[str, ExtractionRecord] = {}
    for record in records:
        key = record.reference.key
        if key in out:
            raise DuplicateReference(
                f"corpus {label} contains reference key {key!r} more than once"
            )
        out[key] = record
    return out


def _mean(scores: list[float]) -> float:
    # An empty comparison is vacuous agreement, not an error.
    if not scores:
        return 100.0
    return 100.0 * sum(scores) / len(scores)


def agreement_report(
    records_a: Iterable[ExtractionRecord],
    records_b: Iterable[ExtractionRecord],
    schema: TaxonomySchema,
) -> AgreementReport:
    """Compare two annotator corpora over their shared references.

    Raises:
        DuplicateReference: one corpus repeats a reference key.
        EmptyComparison: the corpora share no reference key.
    """
    by_key_a = _keyed(records_a, "A")
    by_key_b = _keyed(records_b, "B")
    common = sorted(set(by_key_a) & set(by_key_b))
    if not common:
        raise EmptyComparison("the two corpora share no reference keys")

    all_scores: list[ValueScore] = []
    unmatched_a: list[str] = []
    unmatched_b: list[str] = []
    per_reference: dict[str, tuple[int, float]] = {}
    for key in common:
        pairs = align_objects(by_key_a[key], by_key_b[key], schema)
        ref_scores: list[ValueScore] = []
        for pair in pairs:
            ref_scores.extend(score_pair(pair, key))
            if pair.b is None and pair.a is not None:
                unmatched_a.append(f"{key}#{pair.a.id}")
            if pair.a is None and pair.b is not None:
                unmatched_b.append(f"{key}#{pair.b.id}")
        all_scores.extend(ref_scores)
        per_reference[key] = (
            len(ref_scores),
            _mean([s.score for s in ref_scores]),
        )

    per_kind: dict[str, tuple[int, float]] = {}
    for kind in (KIND_DIMENSION, KIND_SCOPE_NOTE):
        kind_scores = [s.score for s in all_scores if s.kind == kind]
        per_kind[kind] = (len(kind_scores), _mean(kind_scores))

    return AgreementReport(
        n_values=len(all_scores),
        mean_agreement=_mean([s.score for s in all_scores]),
        common_references=tuple(common),
        only_in_a=tuple(sorted(set(by_key_a) - set(by_key_b))),
        only_in_b=tuple(sorted(set(by_key_b) - set(by_key_a))),
        unmatched_a=tuple(unmatched_a),
        unmatched_b=tuple(unmatched_b),
        per_reference=per_reference,
        per_kind=per_kind,
        scores=tuple(all_scores),
    )


def format_agreement(report: AgreementReport) -> str:
    """Render an agreement report as text; the headline carries the
    value count and the mean."""
    lines = [f"n={report.n_values}, agreement={report.mean_agreement:.2f}%"]
    lines.append(
        "policy: objects extracted by only one annotator score 0.0 on all their attributes"
    )
    if report.common_references:
        lines.append(f"shared references: {len(report.common_references)}")
    for label, keys in (("only in A", report.only_in_a), ("only in B", report.only_in_b)):
        if keys:
            lines.append(f"references {label}: " + ", ".join(keys))
    for label, ids in (("only A extracted", report.unmatched_a), ("only B extracted", report.unmatched_b)):
        if ids:
            lines.append(f"objects {label}: " + ", ".join(ids))
    if report.per_kind:
        for kind in sorted(report.per_kind):
            n, mean = report.per_kind[kind]
            lines.append(f"  by {kind}: n={n}, agreement={mean:.2f}%")
    if report.per_reference:
        for key in sorted(report.per_reference):
            n, mean = report.per_reference[key]
            lines.append(f"  {key}: n={n}, agreement={mean:.2f}%")
    return "\n".join(lines)
