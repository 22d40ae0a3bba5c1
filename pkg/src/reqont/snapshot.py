"""Snapshot building: merging extraction records into one ontology state.

Factors asserted by different references under the same normalized name
(or tied together through alias notes) collapse into a single node.
Relations are resolved here, in one pass, so every link problem has
exactly one describing finding. Building is order-independent: any
permutation of the same records yields an equal snapshot.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from . import conventions as conv
from .errors import DuplicateReference, EmptyName, LinkError
from .findings import (
    APPROACH_WITHOUT_DESCRIPTION,
    CARDINALITY_BREACH,
    DESCRIPTION_FACTOR_COUNT,
    DUPLICATE_REFERENCE,
    FACTOR_WITHOUT_DESCRIPTION,
    SEVERITY_ERROR,
    UNNAMED_FACTOR,
    UNRESOLVED_RELATION,
    Finding,
    FindingCollector,
    finding_sort_key,
)
from .records import (
    ExtractionRecord,
    OntologyObject,
    canonical_serialize,
    normalize_factor_name,
    split_target,
)
from .schema import RelationDef, TaxonomySchema, UNBOUNDED


def display_name(text: str) -> str:
    """Clean a name for display: NFC, whitespace collapsed, case kept."""
    return " ".join(unicodedata.normalize("NFC", text).split())


@dataclass(frozen=True)
class Conflict:
    """Marker for a dimension on which assertions disagree."""

    values: tuple[str, ...]

    def render(self) -> str:
        return "conflict(" + " | ".join(self.values) + ")"


@dataclass(frozen=True)
class Located:
    """An ontology object together with the reference asserting it."""

    reference: str
    obj: OntologyObject


@dataclass(frozen=True)
class FactorNode:
    """One merged quality factor.

    ``implicit`` nodes were never asserted by a factor object; they
    exist only because a description named them.
    """

    key: str
    canonical_name: str
    implicit: bool
    aliases: tuple[str, ...] = ()
    assertions: tuple[Located, ...] = ()
    merged_values: dict[str, str | Conflict] = field(default_factory=dict)

    def conflicts(self) -> dict[str, Conflict]:
        return {
            dim: value
            for dim, value in self.merged_values.items()
            if isinstance(value, Conflict)
        }


@dataclass(frozen=True)
class OntologySnapshot:
    """Merged, link-resolved state of a whole repository."""

    schema: TaxonomySchema
    records: tuple[ExtractionRecord, ...]
    factors: dict[str, FactorNode]
    factor_aliases: dict[str, str]
    factor_descriptions: dict[str, tuple[Located, ...]]
    factor_datasets: dict[str, tuple[Located, ...]]
    factor_approaches: dict[str, tuple[Located, ...]]
    reference_objects: dict[str, tuple[OntologyObject, ...]]
    author_references: dict[str, tuple[str, ...]]
    link_errors: tuple[Finding, ...] = ()

    def resolve_factor(self, name_or_key: str) -> FactorNode | None:
        """Look up a factor by raw name, normalized key, or alias."""
        try:
            key = normalize_factor_name(name_or_key)
        except EmptyName:
            return None
        node_key = self.factor_aliases.get(key)
        return self.factors.get(node_key) if node_key else None

    def reference_keys(self) -> tuple[str, ...]:
        return tuple(sorted(self.reference_objects))

    def objects_of(self, taxonomy: str) -> tuple[Located, ...]:
        """All objects of one taxonomy across the corpus, stable order."""
        out = []
        for ref_key in sorted(self.reference_objects):
            for obj in self.reference_objects[ref_key]:
                if obj.taxonomy == taxonomy:
                    out.append(Located(ref_key, obj))
        return tuple(out)


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[str, str] = {}

    def add(self, key: str) -> None:
        self.parent.setdefault(key, key)

    def __contains__(self, key: str) -> bool:
        return key in self.parent

    def find(self, key: str) -> str:
        root = key
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[key] != root:
            self.parent[key], key = root, self.parent[key]
        return root

    def union(self, a: str, b: str) -> None:
        self.add(a)
        self.add(b)
        self.parent[self.find(a)] = self.find(b)


def _factor_relations(schema: TaxonomySchema, taxonomy_name: str) -> tuple[RelationDef, ...]:
    tax = schema.taxonomy(taxonomy_name)
    if tax is None:
        return ()
    return tuple(r for r in tax.relations if r.target_taxonomy == conv.FACTOR)


def build_snapshot(
    schema: TaxonomySchema,
    records: list[ExtractionRecord] | tuple[ExtractionRecord, ...],
    *,
    strict: bool = True,
) -> OntologySnapshot:
    """Merge parsed records into a snapshot.

    In strict mode (default) broken links raise :class:`LinkError` and
    duplicate reference keys raise :class:`DuplicateReference`; a
    partial snapshot is never returned. In lenient mode the same
    conditions become findings in ``snapshot.link_errors``.

    Raises:
        DuplicateReference: strict mode, two records share a key.
        LinkError: strict mode, an unresolvable relation target, a
            description not describing exactly one factor, an approach
            with no resolved description, or a factor without any
            description.
    """
    out = FindingCollector()
    breaches: list[Finding] = []

    def breach(finding_args: dict) -> None:
        finding = Finding(severity=SEVERITY_ERROR, **finding_args)
        out.items.append(finding)
        breaches.append(finding)

    # Deterministic processing order regardless of input permutation.
    ordered = tuple(
        sorted(records, key=lambda r: (r.reference.key, canonical_serialize(r)))
    )
    primary: dict[str, ExtractionRecord] = {}
    for rec in ordered:
        key = rec.reference.key
        if key in primary:
            if strict:
                raise DuplicateReference(
                    f"reference key {key!r} is claimed by more than one record"
                )
            out.add(
                SEVERITY_ERROR,
                DUPLICATE_REFERENCE,
                f"reference key {key!r} is claimed by more than one record",
                reference=key,
            )
        else:
            primary[key] = rec

    # --- pass 1: explicit factor objects, alias unification ---------------
    groups = _UnionFind()
    displays: dict[str, set[str]] = {}
    assertions: list[tuple[str, Located]] = []

    def register_display(key: str, raw: str) -> None:
        displays.setdefault(key, set()).add(display_name(raw))

    for ref_key in sorted(primary):
        for obj in primary[ref_key].objects:
            if obj.taxonomy != conv.FACTOR:
                continue
            raw_name = obj.notes.get(conv.NAME_NOTE, "")
            try:
                key = normalize_factor_name(raw_name)
            except EmptyName:
                out.add(
                    SEVERITY_ERROR,
                    UNNAMED_FACTOR,
                    f"factor object {obj.id!r} has no usable {conv.NAME_NOTE!r} note",
                    taxonomy=obj.taxonomy,
                    reference=ref_key,
                    object_id=obj.id,
                )
                continue
            groups.add(key)
            register_display(key, raw_name)
            assertions.append((key, Located(ref_key, obj)))
            for piece in obj.notes.get(conv.ALIASES_NOTE, "").split(conv.ALIAS_SEPARATOR):
                cleaned = display_name(piece)
                if not cleaned:
                    continue
                alias_key = normalize_factor_name(cleaned)
                groups.union(key, alias_key)
                register_display(alias_key, cleaned)

    # --- pass 2: implicit factors named by descriptions --------------------
    for ref_key in sorted(primary):
        for obj in primary[ref_key].objects:
            if obj.taxonomy != conv.DESCRIPTION:
                continue
            for rel in _factor_relations(schema, obj.taxonomy):
                for target in obj.relations.get(rel.name, ()):
                    cleaned = display_name(target)
                    if not cleaned:
                        continue
                    key = normalize_factor_name(cleaned)
                    groups.add(key)
                    register_display(key, cleaned)

    # --- group resolution ---------------------------------------------------
    members_by_root: dict[str, list[str]] = {}
    for key in groups.parent:
        members_by_root.setdefault(groups.find(key), []).append(key)

    assertions_by_root: dict[str, list[Located]] = {}
    for key, located in assertions:
        assertions_by_root.setdefault(groups.find(key), []).append(located)

    factors: dict[str, FactorNode] = {}
    factor_aliases: dict[str, str] = {}
    for root, members in members_by_root.items():
        names = sorted(
            {name for key in members for name in displays.get(key, ())},
            key=lambda s: (s.casefold(), s),
        )
        canonical = names[0]
        node_key = normalize_factor_name(canonical)
        node_assertions = tuple(
            sorted(
                assertions_by_root.get(root, ()),
                key=lambda loc: (loc.reference, loc.obj.id),
            )
        )
        node = FactorNode(
            key=node_key,
            canonical_name=canonical,
            implicit=not node_assertions,
            aliases=tuple(sorted(set(members) - {node_key})),
            assertions=node_assertions,
            merged_values=_merge_values(node_assertions),
        )
        factors[node_key] = node
        for member in members:
            factor_aliases[member] = node_key

    # --- pass 3: relation resolution and structural checks ------------------
    object_index: dict[tuple[str, str], Located] = {}
    for ref_key, rec in primary.items():
        for obj in rec.objects:
            object_index.setdefault((ref_key, obj.id), Located(ref_key, obj))

    direct_links: dict[str, dict[str, list[Located]]] = {}
    approach_desc_targets: dict[tuple[str, str], list[Located]] = {}

    for ref_key in sorted(primary):
        for obj in primary[ref_key].objects:
            tax = schema.taxonomy(obj.taxonomy)
            if tax is None:
                continue
            located = Located(ref_key, obj)
            desc_factor_declared = 0
            desc_factor_covered_by_cardinality = False

            for rel in tax.relations:
                targets = obj.relations.get(rel.name, ())
                count = len(targets)

                over = rel.max_cardinality is not UNBOUNDED and count > rel.max_cardinality
                under = count < rel.min_cardinality
                if over or under:
                    bound = (
                        f"at least {rel.min_cardinality}"
                        if under
                        else f"at most {rel.max_cardinality}"
                    )
                    finding_args = dict(
                        code=CARDINALITY_BREACH,
                        message=(
                            f"object {obj.id!r} declares {count} {rel.name!r} targets, "
                            f"expected {bound}"
                        ),
                        taxonomy=obj.taxonomy,
                        reference=ref_key,
                        object_id=obj.id,
                        subject=rel.name,
                    )
                    # Cardinality breaches only block strict building when
                    # they coincide with a structural invariant.
                    if obj.taxonomy == conv.DESCRIPTION and rel.target_taxonomy == conv.FACTOR:
                        breach(finding_args)
                        desc_factor_covered_by_cardinality = True
                    elif (
                        obj.taxonomy == conv.APPROACH
                        and rel.target_taxonomy == conv.DESCRIPTION
                        and under
                        and count == 0
                    ):
                        breach(finding_args)
                    else:
                        out.items.append(
                            Finding(severity=SEVERITY_ERROR, **finding_args)
                        )

                if rel.target_taxonomy == conv.FACTOR:
                    if obj.taxonomy == conv.DESCRIPTION:
                        desc_factor_declared += count
                    for target in targets:
                        try:
                            target_key = normalize_factor_name(target)
                        except EmptyName:
                            breach(
                                dict(
                                    code=UNRESOLVED_RELATION,
                                    message=(
                                        f"relation {rel.name!r} of object {obj.id!r} "
                                        f"targets an empty factor name"
                                    ),
                                    taxonomy=obj.taxonomy,
                                    reference=ref_key,
                                    object_id=obj.id,
                                    subject=rel.name,
                                )
                            )
                            continue
                        node_key = factor_aliases.get(target_key)
                        if node_key is None:
                            # Only descriptions create factors implicitly;
                            # pass 2 guarantees theirs always resolve.
                            breach(
                                dict(
                                    code=UNRESOLVED_RELATION,
                                    message=(
                                        f"relation {rel.name!r} of object {obj.id!r} "
                                        f"targets unknown factor {target!r}"
                                    ),
                                    taxonomy=obj.taxonomy,
                                    reference=ref_key,
                                    object_id=obj.id,
                                    subject=f"{rel.name}:{target}",
                                )
                            )
                            continue
                        direct_links.setdefault(node_key, {}).setdefault(
                            obj.taxonomy, []
                        ).append(located)
                else:
                    for target in targets:
                        target_ref, target_id = split_target(target)
                        resolved = object_index.get((target_ref or ref_key, target_id))
                        if resolved is None:
                            breach(
                                dict(
                                    code=UNRESOLVED_RELATION,
                                    message=(
                                        f"relation {rel.name!r} of object {obj.id!r} "
                                        f"targets unknown object {target!r}"
                                    ),
                                    taxonomy=obj.taxonomy,
                                    reference=ref_key,
                                    object_id=obj.id,
                                    subject=f"{rel.name}:{target}",
                                )
                            )
                            continue
                        if resolved.obj.taxonomy != rel.target_taxonomy:
                            breach(
                                dict(
                                    code=UNRESOLVED_RELATION,
                                    message=(
                                        f"relation {rel.name!r} of object {obj.id!r} targets "
                                        f"{target!r} of taxonomy {resolved.obj.taxonomy!r}, "
                                        f"expected {rel.target_taxonomy!r}"
                                    ),
                                    taxonomy=obj.taxonomy,
                                    reference=ref_key,
                                    object_id=obj.id,
                                    subject=f"{rel.name}:{target}",
                                )
                            )
                            continue
                        if (
                            obj.taxonomy == conv.APPROACH
                            and rel.target_taxonomy == conv.DESCRIPTION
                        ):
                            approach_desc_targets.setdefault(
                                (ref_key, obj.id), []
                            ).append(resolved)

            # Structural invariant: a description describes exactly one factor.
            if (
                obj.taxonomy == conv.DESCRIPTION
                and schema.taxonomy(conv.FACTOR) is not None
                and desc_factor_declared != 1
                and not desc_factor_covered_by_cardinality
            ):
                breach(
                    dict(
                        code=DESCRIPTION_FACTOR_COUNT,
                        message=(
                            f"description {obj.id!r} names {desc_factor_declared} factors, "
                            f"expected exactly 1"
                        ),
                        taxonomy=obj.taxonomy,
                        reference=ref_key,
                        object_id=obj.id,
                    )
                )

            # Structural invariant: an approach grounds in >= 1 description.
            if obj.taxonomy == conv.APPROACH and schema.taxonomy(conv.DESCRIPTION) is not None:
                declared = sum(
                    len(obj.relations.get(rel.name, ()))
                    for rel in tax.relations
                    if rel.target_taxonomy == conv.DESCRIPTION
                )
                resolved_count = len(approach_desc_targets.get((ref_key, obj.id), ()))
                min_required = max(
                    (
                        rel.min_cardinality
                        for rel in tax.relations
                        if rel.target_taxonomy == conv.DESCRIPTION
                    ),
                    default=0,
                )
                # Unresolved targets and zero-declared-with-min>=1 already
                # produced their own breach findings above.
                if resolved_count == 0 and declared == 0 and min_required == 0:
                    breach(
                        dict(
                            code=APPROACH_WITHOUT_DESCRIPTION,
                            message=f"approach {obj.id!r} is not grounded in any description",
                            taxonomy=obj.taxonomy,
                            reference=ref_key,
                            object_id=obj.id,
                        )
                    )

    # --- indexes -------------------------------------------------------------
    def links_of(taxonomy: str) -> dict[str, tuple[Located, ...]]:
        return {
            node_key: tuple(
                sorted(by_tax.get(taxonomy, ()), key=lambda loc: (loc.reference, loc.obj.id))
            )
            for node_key, by_tax in direct_links.items()
            if by_tax.get(taxonomy)
        }

    factor_descriptions = links_of(conv.DESCRIPTION)
    factor_datasets = links_of(conv.DATASET)

    desc_to_factor: dict[tuple[str, str], list[str]] = {}
    for node_key, by_tax in direct_links.items():
        for loc in by_tax.get(conv.DESCRIPTION, ()):
            desc_to_factor.setdefault((loc.reference, loc.obj.id), []).append(node_key)

    factor_approaches: dict[str, list[Located]] = {}
    for (ref_key, obj_id), desc_targets in approach_desc_targets.items():
        approach = object_index[(ref_key, obj_id)]
        for desc in desc_targets:
            for node_key in desc_to_factor.get((desc.reference, desc.obj.id), ()):
                existing = factor_approaches.setdefault(node_key, [])
                if approach not in existing:
                    existing.append(approach)
    for node_key, by_tax in direct_links.items():
        for loc in by_tax.get(conv.APPROACH, ()):
            existing = factor_approaches.setdefault(node_key, [])
            if loc not in existing:
                existing.append(loc)
    factor_approaches_idx = {
        node_key: tuple(sorted(locs, key=lambda loc: (loc.reference, loc.obj.id)))
        for node_key, locs in factor_approaches.items()
    }

    # Structural invariant: a factor carries at least one description.
    for node_key in sorted(factors):
        if not factor_descriptions.get(node_key):
            breach(
                dict(
                    code=FACTOR_WITHOUT_DESCRIPTION,
                    message=(
                        f"factor {factors[node_key].canonical_name!r} has no description"
                    ),
                    taxonomy=conv.FACTOR,
                    subject=node_key,
                )
            )

    if strict and breaches:
        summary = "; ".join(f.message for f in breaches[:5])
        extra = f" (+{len(breaches) - 5} more)" if len(breaches) > 5 else ""
        raise LinkError(f"broken links: {summary}{extra}", findings=tuple(breaches))

    author_references: dict[str, tuple[str, ...]] = {}
    by_author: dict[str, set[str]] = {}
    for ref_key, rec in primary.items():
        for author in rec.reference.authors:
            by_author.setdefault(display_name(author), set()).add(ref_key)
    for author in sorted(by_author):
        author_references[author] = tuple(sorted(by_author[author]))

    return OntologySnapshot(
        schema=schema,
        records=ordered,
        factors=factors,
        factor_aliases=factor_aliases,
        factor_descriptions=factor_descriptions,
        factor_datasets=factor_datasets,
        factor_approaches=factor_approaches_idx,
        reference_objects={
            ref_key: primary[ref_key].objects for ref_key in sorted(primary)
        },
        author_references=author_references,
        link_errors=tuple(sorted(out.items, key=finding_sort_key)),
    )


def _merge_values(assertions: tuple[Located, ...]) -> dict[str, str | Conflict]:
    """Merge dimension values across assertions; disagreements become
    Conflict markers."""
    collected: dict[str, set[str]] = {}
    for located in assertions:
        for dim, value in located.obj.values.items():
            collected.setdefault(dim, set()).add(value)
    merged: dict[str, str | Conflict] = {}
    for dim in sorted(collected):
        values = sorted(collected[dim])
        merged[dim] = values[0] if len(values) == 1 else Conflict(tuple(values))
    return merged
