"""Goal-oriented queries over a snapshot: filtering, gaps, statistics.

All functions are read-only and deterministic; result order is the
normalized factor key order unless stated otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import conventions as conv
from .errors import UnknownCharacteristic, UnknownFactor
from .schema import expand_clusters
from .snapshot import FactorNode, Located, OntologySnapshot

CLUSTER_SUFFIX_SEPARATOR = "."


@dataclass(frozen=True)
class FactorFilter:
    """Conjunction of optional factor criteria.

    ``aspect`` pairs an impacted-aspect dimension (exact name or the
    member name after the cluster prefix) with the required value.
    """

    scope: str | None = None
    aspect: tuple[str, str] | None = None
    text_query: str | None = None
    has_approach: bool | None = None
    has_dataset: bool | None = None
    accessibility: str | None = None
    evidence: bool | None = None
    practitioners: bool | None = None


def _factor_dimensions(snapshot: OntologySnapshot) -> dict[str, tuple[str, ...]]:
    tax = snapshot.schema.taxonomy(conv.FACTOR)
    if tax is None:
        return {}
    return {dim.name: dim.characteristics for dim in expand_clusters(tax)}


def _resolve_aspect_dimension(snapshot: OntologySnapshot, name: str) -> str | None:
    """Find a factor dimension by full name or cluster-member suffix."""
    dims = _factor_dimensions(snapshot)
    if name in dims:
        return name
    matches = [
        dim for dim in dims if dim.endswith(f"{CLUSTER_SUFFIX_SEPARATOR}{name}")
    ]
    if len(matches) == 1:
        return matches[0]
    return None


def _accessibility_vocabulary(snapshot: OntologySnapshot) -> set[str]:
    vocabulary: set[str] = set()
    for tax_name in (conv.DATASET, conv.APPROACH):
        tax = snapshot.schema.taxonomy(tax_name)
        if tax is None:
            continue
        for dim in expand_clusters(tax):
            if dim.name == conv.ACCESSIBILITY_DIMENSION:
                vocabulary.update(dim.characteristics)
    return vocabulary


def validate_filter(snapshot: OntologySnapshot, flt: FactorFilter) -> None:
    """Check filter values against the schema vocabulary.

    Raises:
        UnknownCharacteristic: a value is outside the vocabulary the
            schema declares for its dimension.
    """
    dims = _factor_dimensions(snapshot)
    if flt.scope is not None:
        scope_values = dims.get(conv.SCOPE_DIMENSION, ())
        if flt.scope not in scope_values:
            raise UnknownCharacteristic(
                f"{flt.scope!r} is not a declared {conv.SCOPE_DIMENSION} characteristic"
            )
    if flt.aspect is not None:
        name, value = flt.aspect
        dim = _resolve_aspect_dimension(snapshot, name)
        if dim is None:
            raise UnknownCharacteristic(f"{name!r} does not name a factor dimension")
        if value not in dims[dim]:
            raise UnknownCharacteristic(
                f"{value!r} is not a characteristic of dimension {dim!r}"
            )
    if flt.accessibility is not None:
        vocabulary = _accessibility_vocabulary(snapshot)
        if flt.accessibility not in vocabulary:
            raise UnknownCharacteristic(
                f"{flt.accessibility!r} is not a declared {conv.ACCESSIBILITY_DIMENSION} "
                f"characteristic"
            )


def _node_value_matches(node: FactorNode, dimension: str, value: str) -> bool:
    """True if any assertion of the node sets ``dimension`` to ``value``."""
    return any(
        located.obj.values.get(dimension) == value for located in node.assertions
    )


def _definition_texts(snapshot: OntologySnapshot, key: str) -> tuple[str, ...]:
    return tuple(
        located.obj.notes.get(conv.DEFINITION_NOTE, "")
        for located in snapshot.factor_descriptions.get(key, ())
    )


def _linked_value(
    snapshot: OntologySnapshot, key: str, dimension: str, value: str
) -> bool:
    for index in (snapshot.factor_datasets, snapshot.factor_approaches):
        for located in index.get(key, ()):
            if located.obj.values.get(dimension) == value:
                return True
    return False


def _description_flag(snapshot: OntologySnapshot, key: str, dimension: str) -> bool:
    return any(
        located.obj.values.get(dimension) == conv.POSITIVE
        for located in snapshot.factor_descriptions.get(key, ())
    )


def query_factors(snapshot: OntologySnapshot, flt: FactorFilter) -> tuple[FactorNode, ...]:
    """Return factors matching every set criterion, in key order.

    Raises:
        UnknownCharacteristic: see :func:`validate_filter`.
    """
    validate_filter(snapshot, flt)
    aspect_dim: str | None = None
    if flt.aspect is not None:
        aspect_dim = _resolve_aspect_dimension(snapshot, flt.aspect[0])

    out = []
    for key in sorted(snapshot.factors):
        node = snapshot.factors[key]
        if flt.scope is not None and not _node_value_matches(
            node, conv.SCOPE_DIMENSION, flt.scope
        ):
            continue
        if flt.aspect is not None and not _node_value_matches(
            node, aspect_dim or "", flt.aspect[1]
        ):
            continue
        if flt.text_query is not None:
            needle = flt.text_query.casefold()
            haystacks = (node.canonical_name, *_definition_texts(snapshot, key))
            if not any(needle in text.casefold() for text in haystacks):
                continue
        if flt.has_approach is not None:
            if bool(snapshot.factor_approaches.get(key)) is not flt.has_approach:
                continue
        if flt.has_dataset is not None:
            if bool(snapshot.factor_datasets.get(key)) is not flt.has_dataset:
                continue
        if flt.accessibility is not None and not _linked_value(
            snapshot, key, conv.ACCESSIBILITY_DIMENSION, flt.accessibility
        ):
            continue
        if flt.evidence is not None:
            if _description_flag(snapshot, key, conv.EVIDENCE_DIMENSION) is not flt.evidence:
                continue
        if flt.practitioners is not None:
            if (
                _description_flag(snapshot, key, conv.PRACTITIONERS_DIMENSION)
                is not flt.practitioners
            ):
                continue
        out.append(node)
    return tuple(out)


@dataclass(frozen=True)
class FactorResources:
    """Everything connected to one factor."""

    node: FactorNode
    descriptions: tuple[Located, ...] = ()
    datasets: tuple[Located, ...] = ()
    approaches: tuple[Located, ...] = ()
    references: tuple[str, ...] = ()


def resources_for_factor(snapshot: OntologySnapshot, name_or_key: str) -> FactorResources:
    """Collect the descriptions, datasets, approaches, and references of
    one factor, looked up by name, key, or alias.

    Raises:
        UnknownFactor: nothing in the snapshot answers to that name.
    """
    node = snapshot.resolve_factor(name_or_key)
    if node is None:
        raise UnknownFactor(f"no factor named {name_or_key!r}")
    descriptions = snapshot.factor_descriptions.get(node.key, ())
    datasets = snapshot.factor_datasets.get(node.key, ())
    approaches = snapshot.factor_approaches.get(node.key, ())
    references = sorted(
        {loc.reference for loc in (*node.assertions, *descriptions, *datasets, *approaches)}
    )
    return FactorResources(
        node=node,
        descriptions=descriptions,
        datasets=datasets,
        approaches=approaches,
        references=tuple(references),
    )


# --- gaps -------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorGapEntry:
    factor_key: str
    name: str
    references: tuple[str, ...] = ()


@dataclass(frozen=True)
class DescriptionGapEntry:
    reference: str
    object_id: str
    factor_key: str | None = None


@dataclass(frozen=True)
class ResourceGapEntry:
    taxonomy: str
    reference: str
    object_id: str
    name: str = ""
    accessibility: str | None = None


@dataclass(frozen=True)
class GapReport:
    """Where the evidence base is thin."""

    factors_without_approach: tuple[FactorGapEntry, ...] = ()
    factors_without_dataset: tuple[FactorGapEntry, ...] = ()
    descriptions_without_evidence: tuple[DescriptionGapEntry, ...] = ()
    descriptions_without_impact: tuple[DescriptionGapEntry, ...] = ()
    undisclosed_resources: tuple[ResourceGapEntry, ...] = ()


def _factor_gap_entries(snapshot: OntologySnapshot, keys: list[str]) -> tuple[FactorGapEntry, ...]:
    entries = []
    for key in keys:
        node = snapshot.factors[key]
        references = sorted(
            {loc.reference for loc in node.assertions}
            | {loc.reference for loc in snapshot.factor_descriptions.get(key, ())}
        )
        entries.append(
            FactorGapEntry(factor_key=key, name=node.canonical_name, references=tuple(references))
        )
    return tuple(entries)


def _description_factor(snapshot: OntologySnapshot, located: Located) -> str | None:
    for key, descriptions in snapshot.factor_descriptions.items():
        if located in descriptions:
            return key
    return None


def gap_report(snapshot: OntologySnapshot) -> GapReport:
    """Compute the coverage gaps of one snapshot."""
    no_approach = [k for k in sorted(snapshot.factors) if not snapshot.factor_approaches.get(k)]
    no_dataset = [k for k in sorted(snapshot.factors) if not snapshot.factor_datasets.get(k)]

    without_evidence = []
    without_impact = []
    for located in snapshot.objects_of(conv.DESCRIPTION):
        factor_key = _description_factor(snapshot, located)
        if located.obj.values.get(conv.EVIDENCE_DIMENSION) != conv.POSITIVE:
            without_evidence.append(
                DescriptionGapEntry(
                    reference=located.reference, object_id=located.obj.id, factor_key=factor_key
                )
            )
        if not located.obj.notes.get(conv.IMPACT_NOTE, "").strip():
            without_impact.append(
                DescriptionGapEntry(
                    reference=located.reference, object_id=located.obj.id, factor_key=factor_key
                )
            )

    undisclosed = []
    for tax_name in (conv.DATASET, conv.APPROACH):
        for located in snapshot.objects_of(tax_name):
            accessibility = located.obj.values.get(conv.ACCESSIBILITY_DIMENSION)
            if accessibility in conv.UNDISCLOSED_ACCESS:
                undisclosed.append(
                    ResourceGapEntry(
                        taxonomy=tax_name,
                        reference=located.reference,
                        object_id=located.obj.id,
                        name=located.obj.notes.get(conv.NAME_NOTE, ""),
                        accessibility=accessibility,
                    )
                )

    return GapReport(
        factors_without_approach=_factor_gap_entries(snapshot, no_approach),
        factors_without_dataset=_factor_gap_entries(snapshot, no_dataset),
        descriptions_without_evidence=tuple(without_evidence),
        descriptions_without_impact=tuple(without_impact),
        undisclosed_resources=tuple(undisclosed),
    )


# --- authors ------------------------------------------------------------------------


@dataclass(frozen=True)
class AuthorEntry:
    author: str
    references: tuple[str, ...] = ()
    factors: tuple[str, ...] = ()
    datasets: tuple[str, ...] = ()
    approaches: tuple[str, ...] = ()


def author_index(snapshot: OntologySnapshot) -> tuple[AuthorEntry, ...]:
    """Who contributed what, keyed by author display name."""
    factor_refs: dict[str, set[str]] = {}
    for key, node in snapshot.factors.items():
        refs = {loc.reference for loc in node.assertions}
        refs.update(loc.reference for loc in snapshot.factor_descriptions.get(key, ()))
        factor_refs[key] = refs

    entries = []
    for author in sorted(snapshot.author_references):
        refs = set(snapshot.author_references[author])
        factors = sorted(k for k, fr in factor_refs.items() if fr & refs)
        datasets: set[str] = set()
        approaches: set[str] = set()
        for tax_name, sink in ((conv.DATASET, datasets), (conv.APPROACH, approaches)):
            for located in snapshot.objects_of(tax_name):
                if located.reference in refs:
                    sink.add(located.obj.notes.get(conv.NAME_NOTE) or located.obj.id)
        entries.append(
            AuthorEntry(
                author=author,
                references=snapshot.author_references[author],
                factors=tuple(factors),
                datasets=tuple(sorted(datasets)),
                approaches=tuple(sorted(approaches)),
            )
        )
    return tuple(entries)


# --- statistics ------------------------------------------------------------------------


@dataclass(frozen=True)
class SummaryStats:
    """Corpus-level counts."""

    n_references: int = 0
    n_references_with_factor: int = 0
    n_factors: int = 0
    n_descriptions: int = 0
    n_datasets: int = 0
    n_approaches: int = 0
    n_datasets_public: int = 0
    n_approaches_public: int = 0
    n_descriptions_with_evidence_or_practitioners: int = 0
    n_descriptions_with_impact: int = 0
    description_count_histogram: dict[int, int] = field(default_factory=dict)


def _public_vocabulary(snapshot: OntologySnapshot, taxonomy: str) -> frozenset[str]:
    base = conv.PUBLIC_ACCESS.get(taxonomy, frozenset())
    extra = snapshot.schema.public_accessibility.get(taxonomy, ())
    return base | frozenset(extra)


def summary_stats(snapshot: OntologySnapshot) -> SummaryStats:
    """Count the corpus. Public resources are those whose accessibility
    falls in the built-in public sets, extended by the schema's
    public_accessibility table."""
    references_with_factor: set[str] = set()
    for node in snapshot.factors.values():
        references_with_factor.update(loc.reference for loc in node.assertions)
    for descriptions in snapshot.factor_descriptions.values():
        references_with_factor.update(loc.reference for loc in descriptions)

    descriptions = snapshot.objects_of(conv.DESCRIPTION)
    datasets = snapshot.objects_of(conv.DATASET)
    approaches = snapshot.objects_of(conv.APPROACH)

    def count_public(locateds: tuple[Located, ...], taxonomy: str) -> int:
        vocabulary = _public_vocabulary(snapshot, taxonomy)
        return sum(
            1
            for loc in locateds
            if loc.obj.values.get(conv.ACCESSIBILITY_DIMENSION) in vocabulary
        )

    histogram: dict[int, int] = {}
    for key in snapshot.factors:
        count = len(snapshot.factor_descriptions.get(key, ()))
        histogram[count] = histogram.get(count, 0) + 1

    evidence_or_practitioners = sum(
        1
        for loc in descriptions
        if loc.obj.values.get(conv.EVIDENCE_DIMENSION) == conv.POSITIVE
        or loc.obj.values.get(conv.PRACTITIONERS_DIMENSION) == conv.POSITIVE
    )
    with_impact = sum(
        1 for loc in descriptions if loc.obj.notes.get(conv.IMPACT_NOTE, "").strip()
    )

    return SummaryStats(
        n_references=len(snapshot.reference_objects),
        n_references_with_factor=len(references_with_factor),
        n_factors=len(snapshot.factors),
        n_descriptions=len(descriptions),
        n_datasets=len(datasets),
        n_approaches=len(approaches),
        n_datasets_public=count_public(datasets, conv.DATASET),
        n_approaches_public=count_public(approaches, conv.APPROACH),
        n_descriptions_with_evidence_or_practitioners=evidence_or_practitioners,
        n_descriptions_with_impact=with_impact,
        description_count_histogram=dict(sorted(histogram.items())),
    )
