"""Extraction records: what one literature reference contributed.

An extraction file couples one bibliographic reference with the
ontology objects extracted from it. Parsing is schema-driven: values,
notes, and relations are checked against the taxonomy vocabulary.
Defaults declared by the schema are materialized at parse time, so a
parsed record is self-contained and serialize-then-parse is the
identity on canonical files.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from .canonical import canonical_json_bytes
from .errors import EmptyName, FieldError
from .findings import (
    SEVERITY_ERROR,
    UNKNOWN_CHARACTERISTIC,
    UNKNOWN_DIMENSION,
    UNKNOWN_RELATION,
    UNKNOWN_SCOPE_NOTE,
    UNKNOWN_TAXONOMY,
    Finding,
    FindingCollector,
)
from .schema import TaxonomySchema, _Reader, clean_label, expand_clusters, load_json

CROSS_REFERENCE_SEPARATOR = "#"

MIN_YEAR = 1900
MAX_YEAR = 2100


def normalize_factor_name(name: str) -> str:
    """Normalize a factor name to its identity key.

    Unicode NFC, lowercasing, whitespace runs collapsed to single
    hyphens, surrounding whitespace dropped.

    Raises:
        EmptyName: the result would be empty.
    """
    parts = unicodedata.normalize("NFC", name).lower().split()
    if not parts:
        raise EmptyName(f"factor name {name!r} normalizes to the empty string")
    return "-".join(parts)


@dataclass(frozen=True)
class Reference:
    """Bibliographic identity of one source."""

    key: str
    title: str
    authors: tuple[str, ...]
    year: int
    venue: str
    doi: str | None = None
    url: str | None = None


@dataclass(frozen=True)
class OntologyObject:
    """One extracted object: values, notes, and relation targets."""

    id: str
    taxonomy: str
    values: dict[str, str] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)
    relations: dict[str, tuple[str, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class ExtractionRecord:
    """Everything one reference contributed."""

    reference: Reference
    objects: tuple[OntologyObject, ...] = ()


def parse_extraction(
    raw: bytes | str, schema: TaxonomySchema, path: str | None = None
) -> ExtractionRecord:
    """Parse an extraction file strictly.

    Raises:
        ParseError: structural problems (syntax, kinds, unknown keys,
            missing fields).
        FieldError: unknown taxonomy, dimension, characteristic, scope
            note, or relation names; all offences are collected before
            raising.
    """
    record, findings = parse_extraction_lenient(raw, schema, path)
    if findings:
        summary = "; ".join(f.message for f in findings[:5])
        extra = f" (+{len(findings) - 5} more)" if len(findings) > 5 else ""
        raise FieldError(
            f"{path or 'extraction'}: {summary}{extra}", findings=tuple(findings)
        )
    return record


def parse_extraction_lenient(
    raw: bytes | str, schema: TaxonomySchema, path: str | None = None
) -> tuple[ExtractionRecord, tuple[Finding, ...]]:
    """Parse an extraction file, collecting vocabulary offences.

    Structural problems still raise ParseError; unknown vocabulary
    (taxonomy, dimension, characteristic, note, relation names) is
    returned as findings and the offending entries are kept verbatim so
    validators can report on them.
    """
    reader = _Reader(path)
    data = reader.expect_object(load_json(raw, path), "$")
    reader.check_keys(data, "$", required=("reference", "objects"))

    reference = _parse_reference(reader, data["reference"])
    out = FindingCollector()

    objects = []
    for o_index, raw_obj in enumerate(reader.expect_array(data["objects"], "$.objects")):
        loc = f"$.objects[{o_index}]"
        obj = reader.expect_object(raw_obj, loc)
        reader.check_keys(
            obj, loc, required=("id", "taxonomy"), optional=("values", "notes", "relations")
        )
        object_id = reader.expect_string(obj["id"], f"{loc}.id")
        taxonomy_name = reader.expect_string(obj["taxonomy"], f"{loc}.taxonomy")

        values: dict[str, str] = {}
        for key, value in reader.expect_object(obj.get("values", {}), f"{loc}.values").items():
            values[clean_label(key)] = reader.expect_string(
                value, f"{loc}.values.{key}"
            )

        notes: dict[str, str] = {}
        for key, value in reader.expect_object(obj.get("notes", {}), f"{loc}.notes").items():
            notes[clean_label(key)] = reader.expect_text(value, f"{loc}.notes.{key}")

        relations: dict[str, tuple[str, ...]] = {}
        for key, value in reader.expect_object(
            obj.get("relations", {}), f"{loc}.relations"
        ).items():
            # Target order carries no meaning; canonical order keeps
            # serialize-then-parse the identity.
            relations[clean_label(key)] = tuple(
                sorted(reader.string_array(value, f"{loc}.relations.{key}"))
            )

        taxonomy = schema.taxonomy(taxonomy_name)
        if taxonomy is None:
            out.add(
                SEVERITY_ERROR,
                UNKNOWN_TAXONOMY,
                f"object {object_id!r} uses unknown taxonomy {taxonomy_name!r}",
                reference=reference.key,
                object_id=object_id,
                subject=taxonomy_name,
            )
        else:
            dims = {dim.name: dim for dim in expand_clusters(taxonomy)}
            for dim_name, value in values.items():
                dim = dims.get(dim_name)
                if dim is None:
                    out.add(
                        SEVERITY_ERROR,
                        UNKNOWN_DIMENSION,
                        f"object {object_id!r} sets unknown dimension {dim_name!r}",
                        taxonomy=taxonomy_name,
                        reference=reference.key,
                        object_id=object_id,
                        subject=dim_name,
                    )
                elif value not in dim.characteristics:
                    out.add(
                        SEVERITY_ERROR,
                        UNKNOWN_CHARACTERISTIC,
                        f"value {value!r} is not a characteristic of dimension {dim_name!r}",
                        taxonomy=taxonomy_name,
                        reference=reference.key,
                        object_id=object_id,
                        subject=f"{dim_name}:{value}",
                    )
            # Materialize defaults for dimensions left unset. Required
            # dimensions are never defaulted: absence must be visible.
            for dim in dims.values():
                if dim.name not in values and dim.default is not None and not dim.required:
                    values[dim.name] = dim.default

            known_notes = {note.name for note in taxonomy.scope_notes}
            for note_name in notes:
                if note_name not in known_notes:
                    out.add(
                        SEVERITY_ERROR,
                        UNKNOWN_SCOPE_NOTE,
                        f"object {object_id!r} sets unknown scope note {note_name!r}",
                        taxonomy=taxonomy_name,
                        reference=reference.key,
                        object_id=object_id,
                        subject=note_name,
                    )

            known_relations = {rel.name for rel in taxonomy.relations}
            for rel_name in relations:
                if rel_name not in known_relations:
                    out.add(
                        SEVERITY_ERROR,
                        UNKNOWN_RELATION,
                        f"object {object_id!r} uses unknown relation {rel_name!r}",
                        taxonomy=taxonomy_name,
                        reference=reference.key,
                        object_id=object_id,
                        subject=rel_name,
                    )

        objects.append(
            OntologyObject(
                id=object_id,
                taxonomy=taxonomy_name,
                values=values,
                notes=notes,
                relations=relations,
            )
        )

    record = ExtractionRecord(reference=reference, objects=tuple(objects))
    return record, out.sorted()


def _parse_reference(reader: _Reader, raw: object) -> Reference:
    ref = reader.expect_object(raw, "$.reference")
    reader.check_keys(
        ref,
        "$.reference",
        required=("key", "title", "authors", "year", "venue"),
        optional=("doi", "url"),
    )
    year = reader.expect_int(ref["year"], "$.reference.year")
    if not MIN_YEAR <= year <= MAX_YEAR:
        raise reader.fail(
            f"year {year} outside plausible range {MIN_YEAR}..{MAX_YEAR}",
            "$.reference.year",
        )
    return Reference(
        key=reader.expect_string(ref["key"], "$.reference.key"),
        title=reader.expect_text(ref["title"], "$.reference.title"),
        authors=reader.string_array(ref["authors"], "$.reference.authors", min_items=1),
        year=year,
        venue=reader.expect_text(ref["venue"], "$.reference.venue"),
        doi=reader.expect_string(ref["doi"], "$.reference.doi") if "doi" in ref else None,
        url=reader.expect_string(ref["url"], "$.reference.url") if "url" in ref else None,
    )


def extraction_to_json(record: ExtractionRecord) -> dict:
    """Return the JSON value for ``record`` in canonical shape."""
    reference: dict = {
        "key": record.reference.key,
        "title": record.reference.title,
        "authors": list(record.reference.authors),
        "year": record.reference.year,
        "venue": record.reference.venue,
    }
    if record.reference.doi is not None:
        reference["doi"] = record.reference.doi
    if record.reference.url is not None:
        reference["url"] = record.reference.url
    return {
        "reference": reference,
        "objects": [
            {
                "id": obj.id,
                "taxonomy": obj.taxonomy,
                "values": dict(obj.values),
                "notes": dict(obj.notes),
                "relations": {
                    name: sorted(targets) for name, targets in obj.relations.items()
                },
            }
            for obj in record.objects
        ],
    }


def canonical_serialize(record: ExtractionRecord) -> bytes:
    """Serialize ``record`` to canonical JSON bytes."""
    return canonical_json_bytes(extraction_to_json(record))


def split_target(target: str) -> tuple[str | None, str]:
    """Split a relation target into (reference key or None, object id)."""
    if CROSS_REFERENCE_SEPARATOR in target:
        ref_key, _, object_id = target.partition(CROSS_REFERENCE_SEPARATOR)
        return ref_key, object_id
    return None, target
