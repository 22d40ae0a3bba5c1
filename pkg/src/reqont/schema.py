"""Structure file parsing and the in-memory schema model.

A structure file declares the taxonomies of the ontology: their
dimensions (each with at least two characteristics), dimension-clusters
(several dimensions sharing one characteristic set), scope notes, and
typed relations to other taxonomies. The model is immutable; all
mutation happens by parsing a new file.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field

from .canonical import canonical_json_bytes
from .errors import ParseError
from .findings import (
    BAD_CARDINALITY,
    BAD_DEFAULT,
    BAD_VERSION,
    DANGLING_RELATION_TARGET,
    DUPLICATE_CHARACTERISTIC,
    DUPLICATE_CLUSTER_MEMBER,
    DUPLICATE_DIMENSION,
    DUPLICATE_RELATION,
    DUPLICATE_SCOPE_NOTE,
    DUPLICATE_TAXONOMY,
    SEVERITY_ERROR,
    TOO_FEW_CHARACTERISTICS,
    UNKNOWN_CHARACTERISTIC,
    UNKNOWN_TAXONOMY,
    Finding,
    FindingCollector,
)

UNBOUNDED = None  # sentinel for max_cardinality

CLUSTER_SEPARATOR = "."


def clean_label(text: str) -> str:
    """Normalize a label for comparison: Unicode NFC plus trimming."""
    return unicodedata.normalize("NFC", text).strip()


@dataclass(frozen=True)
class DimensionDef:
    """One dimension: a named attribute with a closed set of values."""

    name: str
    characteristics: tuple[str, ...]
    default: str | None = None
    required: bool = False


@dataclass(frozen=True)
class ClusterDef:
    """Several dimensions sharing one characteristic set.

    Expansion yields one :class:`DimensionDef` per member, named
    ``<cluster>.<member>``.
    """

    name: str
    members: tuple[str, ...]
    characteristics: tuple[str, ...]
    default: str | None = None


@dataclass(frozen=True)
class ScopeNoteDef:
    """A named free-text attribute."""

    name: str
    required: bool = False


@dataclass(frozen=True)
class RelationDef:
    """A typed link from objects of this taxonomy to a target taxonomy.

    ``max_cardinality`` is ``None`` for unbounded.
    """

    name: str
    target_taxonomy: str
    min_cardinality: int = 0
    max_cardinality: int | None = UNBOUNDED


@dataclass(frozen=True)
class TaxonomyDef:
    """One taxonomy: dimensions, clusters, scope notes, relations."""

    name: str
    dimensions: tuple[DimensionDef, ...] = ()
    dimension_clusters: tuple[ClusterDef, ...] = ()
    scope_notes: tuple[ScopeNoteDef, ...] = ()
    relations: tuple[RelationDef, ...] = ()


@dataclass(frozen=True)
class TaxonomySchema:
    """A parsed structure file."""

    version: int
    taxonomies: tuple[TaxonomyDef, ...] = ()
    public_accessibility: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def taxonomy(self, name: str) -> TaxonomyDef | None:
        for tax in self.taxonomies:
            if tax.name == name:
                return tax
        return None

    def taxonomy_names(self) -> tuple[str, ...]:
        return tuple(tax.name for tax in self.taxonomies)


def expand_clusters(taxonomy: TaxonomyDef) -> tuple[DimensionDef, ...]:
    """Return all dimensions of ``taxonomy`` with clusters expanded.

    Plain dimensions come first in declaration order, then one dimension
    per cluster member named ``<cluster>.<member>``, sharing the
    cluster's characteristics and default. Cluster-expanded dimensions
    are never required: the shared default stands in for absent values.
    """
    expanded = list(taxonomy.dimensions)
    for cluster in taxonomy.dimension_clusters:
        for member in cluster.members:
            expanded.append(
                DimensionDef(
                    name=f"{cluster.name}{CLUSTER_SEPARATOR}{member}",
                    characteristics=cluster.characteristics,
                    default=cluster.default,
                    required=False,
                )
            )
    return tuple(expanded)


# --- parsing -----------------------------------------------------------------


def _type_name(value: object) -> str:
    return {
        dict: "object",
        list: "array",
        str: "string",
        int: "integer",
        float: "number",
        bool: "boolean",
        type(None): "null",
    }.get(type(value), type(value).__name__)


class _Reader:
    """Thin JSON navigation layer that raises ParseError with positions."""

    def __init__(self, path: str | None) -> None:
        self.path = path

    def fail(self, message: str, location: str) -> ParseError:
        return ParseError(message, path=self.path, location=location)

    def expect_object(self, value: object, location: str) -> dict:
        if not isinstance(value, dict):
            raise self.fail(f"expected object, got {_type_name(value)}", location)
        return value

    def expect_array(self, value: object, location: str) -> list:
        if not isinstance(value, list):
            raise self.fail(f"expected array, got {_type_name(value)}", location)
        return value

    def expect_string(self, value: object, location: str, *, allow_empty: bool = False) -> str:
        if not isinstance(value, str):
            raise self.fail(f"expected string, got {_type_name(value)}", location)
        cleaned = clean_label(value)
        if not cleaned and not allow_empty:
            raise self.fail("expected non-empty string", location)
        return cleaned

    def expect_text(self, value: object, location: str) -> str:
        # Free text: kept verbatim apart from NFC normalization.
        if not isinstance(value, str):
            raise self.fail(f"expected string, got {_type_name(value)}", location)
        return unicodedata.normalize("NFC", value)

    def expect_int(self, value: object, location: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.fail(f"expected integer, got {_type_name(value)}", location)
        return value

    def expect_bool(self, value: object, location: str) -> bool:
        if not isinstance(value, bool):
            raise self.fail(f"expected boolean, got {_type_name(value)}", location)
        return value

    def check_keys(
        self,
        obj: dict,
        location: str,
        required: tuple[str, ...],
        optional: tuple[str, ...] = (),
    ) -> None:
        allowed = set(required) | set(optional)
        for key in obj:
            if key not in allowed:
                raise self.fail(f"unknown key {key!r}", f"{location}.{key}")
        for key in required:
            if key not in obj:
                raise self.fail(f"missing required key {key!r}", location)

    def string_array(
        self, value: object, location: str, *, min_items: int = 0
    ) -> tuple[str, ...]:
        items = self.expect_array(value, location)
        out = tuple(
            self.expect_string(item, f"{location}[{i}]") for i, item in enumerate(items)
        )
        if len(out) < min_items:
            raise self.fail(
                f"expected at least {min_items} items, got {len(out)}", location
            )
        return out


def load_json(raw: bytes | str, path: str | None = None) -> object:
    """Decode and parse JSON, mapping failures to ParseError."""
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}", path=path) from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from exc


def parse_structure(raw: bytes | str, path: str | None = None) -> TaxonomySchema:
    """Parse a structure file.

    Raises:
        ParseError: malformed JSON, wrong kinds, unknown keys, missing
            fields, or a dimension with fewer than two characteristics.
    """
    reader = _Reader(path)
    data = reader.expect_object(load_json(raw, path), "$")
    reader.check_keys(
        data, "$", required=("version", "taxonomies"), optional=("public_accessibility",)
    )

    version = reader.expect_int(data["version"], "$.version")

    taxonomies = []
    for t_index, raw_tax in enumerate(reader.expect_array(data["taxonomies"], "$.taxonomies")):
        loc = f"$.taxonomies[{t_index}]"
        tax = reader.expect_object(raw_tax, loc)
        reader.check_keys(
            tax,
            loc,
            required=("name",),
            optional=("dimensions", "dimension_clusters", "scope_notes", "relations"),
        )
        name = reader.expect_string(tax["name"], f"{loc}.name")

        dimensions = []
        for d_index, raw_dim in enumerate(
            reader.expect_array(tax.get("dimensions", []), f"{loc}.dimensions")
        ):
            d_loc = f"{loc}.dimensions[{d_index}]"
            dim = reader.expect_object(raw_dim, d_loc)
            reader.check_keys(
                dim, d_loc, required=("name", "characteristics"), optional=("default", "required")
            )
            dim_name = reader.expect_string(dim["name"], f"{d_loc}.name")
            characteristics = reader.string_array(
                dim["characteristics"], f"{d_loc}.characteristics", min_items=2
            )
            default = (
                reader.expect_string(dim["default"], f"{d_loc}.default")
                if "default" in dim
                else None
            )
            required = (
                reader.expect_bool(dim["required"], f"{d_loc}.required")
                if "required" in dim
                else False
            )
            dimensions.append(
                DimensionDef(
                    name=dim_name,
                    characteristics=characteristics,
                    default=default,
                    required=required,
                )
            )

        clusters = []
        for c_index, raw_cluster in enumerate(
            reader.expect_array(tax.get("dimension_clusters", []), f"{loc}.dimension_clusters")
        ):
            c_loc = f"{loc}.dimension_clusters[{c_index}]"
            cluster = reader.expect_object(raw_cluster, c_loc)
            reader.check_keys(
                cluster,
                c_loc,
                required=("name", "members", "characteristics"),
                optional=("default",),
            )
            clusters.append(
                ClusterDef(
                    name=reader.expect_string(cluster["name"], f"{c_loc}.name"),
                    members=reader.string_array(
                        cluster["members"], f"{c_loc}.members", min_items=1
                    ),
                    characteristics=reader.string_array(
                        cluster["characteristics"], f"{c_loc}.characteristics", min_items=2
                    ),
                    default=(
                        reader.expect_string(cluster["default"], f"{c_loc}.default")
                        if "default" in cluster
                        else None
                    ),
                )
            )

        scope_notes = []
        for n_index, raw_note in enumerate(
            reader.expect_array(tax.get("scope_notes", []), f"{loc}.scope_notes")
        ):
            n_loc = f"{loc}.scope_notes[{n_index}]"
            note = reader.expect_object(raw_note, n_loc)
            reader.check_keys(note, n_loc, required=("name",), optional=("required",))
            scope_notes.append(
                ScopeNoteDef(
                    name=reader.expect_string(note["name"], f"{n_loc}.name"),
                    required=(
                        reader.expect_bool(note["required"], f"{n_loc}.required")
                        if "required" in note
                        else False
                    ),
                )
            )

        relations = []
        for r_index, raw_rel in enumerate(
            reader.expect_array(tax.get("relations", []), f"{loc}.relations")
        ):
            r_loc = f"{loc}.relations[{r_index}]"
            rel = reader.expect_object(raw_rel, r_loc)
            reader.check_keys(
                rel, r_loc, required=("name", "target"), optional=("min", "max")
            )
            min_card = (
                reader.expect_int(rel["min"], f"{r_loc}.min") if "min" in rel else 0
            )
            if min_card < 0:
                raise reader.fail("min cardinality must be >= 0", f"{r_loc}.min")
            max_card: int | None = UNBOUNDED
            if "max" in rel:
                raw_max = rel["max"]
                if raw_max == "unbounded":
                    max_card = UNBOUNDED
                else:
                    max_card = reader.expect_int(raw_max, f"{r_loc}.max")
                    if max_card < 1:
                        raise reader.fail(
                            'max cardinality must be a positive integer or "unbounded"',
                            f"{r_loc}.max",
                        )
            relations.append(
                RelationDef(
                    name=reader.expect_string(rel["name"], f"{r_loc}.name"),
                    target_taxonomy=reader.expect_string(rel["target"], f"{r_loc}.target"),
                    min_cardinality=min_card,
                    max_cardinality=max_card,
                )
            )

        taxonomies.append(
            TaxonomyDef(
                name=name,
                dimensions=tuple(dimensions),
                dimension_clusters=tuple(clusters),
                scope_notes=tuple(scope_notes),
                relations=tuple(relations),
            )
        )

    public_accessibility: dict[str, tuple[str, ...]] = {}
    if "public_accessibility" in data:
        table = reader.expect_object(data["public_accessibility"], "$.public_accessibility")
        for key, value in table.items():
            public_accessibility[clean_label(key)] = reader.string_array(
                value, f"$.public_accessibility.{key}"
            )

    return TaxonomySchema(
        version=version,
        taxonomies=tuple(taxonomies),
        public_accessibility=public_accessibility,
    )


# --- serialization -----------------------------------------------------------


def _dimension_to_json(dim: DimensionDef) -> dict:
    out: dict = {"name": dim.name, "characteristics": list(dim.characteristics)}
    if dim.default is not None:
        out["default"] = dim.default
    if dim.required:
        out["required"] = True
    return out


def _cluster_to_json(cluster: ClusterDef) -> dict:
    out: dict = {
        "name": cluster.name,
        "members": list(cluster.members),
        "characteristics": list(cluster.characteristics),
    }
    if cluster.default is not None:
        out["default"] = cluster.default
    return out


def _relation_to_json(rel: RelationDef) -> dict:
    return {
        "name": rel.name,
        "target": rel.target_taxonomy,
        "min": rel.min_cardinality,
        "max": "unbounded" if rel.max_cardinality is UNBOUNDED else rel.max_cardinality,
    }


def structure_to_json(schema: TaxonomySchema) -> dict:
    """Return the JSON value for ``schema`` in canonical shape."""
    taxonomies = []
    for tax in schema.taxonomies:
        entry: dict = {"name": tax.name}
        entry["dimensions"] = [_dimension_to_json(d) for d in tax.dimensions]
        entry["dimension_clusters"] = [_cluster_to_json(c) for c in tax.dimension_clusters]
        entry["scope_notes"] = [
            {"name": n.name, "required": True} if n.required else {"name": n.name}
            for n in tax.scope_notes
        ]
        entry["relations"] = [_relation_to_json(r) for r in tax.relations]
        taxonomies.append(entry)
    out: dict = {"version": schema.version, "taxonomies": taxonomies}
    if schema.public_accessibility:
        out["public_accessibility"] = {
            key: list(values) for key, values in schema.public_accessibility.items()
        }
    return out


def serialize_structure(schema: TaxonomySchema) -> bytes:
    """Serialize ``schema`` to canonical JSON bytes."""
    return canonical_json_bytes(structure_to_json(schema))


# --- validation --------------------------------------------------------------

#: Codes whose presence breaks schema uniqueness (ending condition 5).
UNIQUENESS_CODES = frozenset({DUPLICATE_DIMENSION, DUPLICATE_CHARACTERISTIC})


def validate_schema(schema: TaxonomySchema) -> tuple[Finding, ...]:
    """Check a parsed schema against the structural rules.

    Returns all violations; never raises. The result is deterministic
    and independent of declaration order up to the reported positions.
    """
    out = FindingCollector()

    if schema.version < 1:
        out.add(
            SEVERITY_ERROR,
            BAD_VERSION,
            f"schema version must be >= 1, got {schema.version}",
        )

    seen_taxonomies: set[str] = set()
    names = {tax.name for tax in schema.taxonomies}

    for tax in schema.taxonomies:
        if tax.name in seen_taxonomies:
            out.add(
                SEVERITY_ERROR,
                DUPLICATE_TAXONOMY,
                f"taxonomy {tax.name!r} declared more than once",
                taxonomy=tax.name,
            )
            continue
        seen_taxonomies.add(tax.name)

        seen_dimensions: set[str] = set()
        for dim in expand_clusters(tax):
            if dim.name in seen_dimensions:
                out.add(
                    SEVERITY_ERROR,
                    DUPLICATE_DIMENSION,
                    f"dimension {dim.name!r} declared more than once in taxonomy {tax.name!r}",
                    taxonomy=tax.name,
                    subject=dim.name,
                )
            seen_dimensions.add(dim.name)

        for dim in tax.dimensions:
            _check_characteristics(out, tax.name, dim.name, dim.characteristics, dim.default)

        for cluster in tax.dimension_clusters:
            _check_characteristics(
                out, tax.name, cluster.name, cluster.characteristics, cluster.default
            )
            seen_members: set[str] = set()
            for member in cluster.members:
                if member in seen_members:
                    out.add(
                        SEVERITY_ERROR,
                        DUPLICATE_CLUSTER_MEMBER,
                        f"cluster {cluster.name!r} lists member {member!r} more than once",
                        taxonomy=tax.name,
                        subject=cluster.name,
                    )
                seen_members.add(member)

        seen_notes: set[str] = set()
        for note in tax.scope_notes:
            if note.name in seen_notes:
                out.add(
                    SEVERITY_ERROR,
                    DUPLICATE_SCOPE_NOTE,
                    f"scope note {note.name!r} declared more than once in taxonomy {tax.name!r}",
                    taxonomy=tax.name,
                    subject=note.name,
                )
            seen_notes.add(note.name)

        seen_relations: set[str] = set()
        for rel in tax.relations:
            if rel.name in seen_relations:
                out.add(
                    SEVERITY_ERROR,
                    DUPLICATE_RELATION,
                    f"relation {rel.name!r} declared more than once in taxonomy {tax.name!r}",
                    taxonomy=tax.name,
                    subject=rel.name,
                )
            seen_relations.add(rel.name)
            if rel.target_taxonomy not in names:
                out.add(
                    SEVERITY_ERROR,
                    DANGLING_RELATION_TARGET,
                    f"relation {rel.name!r} targets unknown taxonomy {rel.target_taxonomy!r}",
                    taxonomy=tax.name,
                    subject=rel.name,
                )
            if rel.max_cardinality is not UNBOUNDED and rel.min_cardinality > rel.max_cardinality:
                out.add(
                    SEVERITY_ERROR,
                    BAD_CARDINALITY,
                    f"relation {rel.name!r} has min {rel.min_cardinality} > max {rel.max_cardinality}",
                    taxonomy=tax.name,
                    subject=rel.name,
                )

    for key, values in schema.public_accessibility.items():
        tax = schema.taxonomy(key)
        if tax is None:
            out.add(
                SEVERITY_ERROR,
                UNKNOWN_TAXONOMY,
                f"public_accessibility names unknown taxonomy {key!r}",
                subject=key,
            )
            continue
        known = {c for dim in expand_clusters(tax) for c in dim.characteristics}
        for value in values:
            if value not in known:
                out.add(
                    SEVERITY_ERROR,
                    UNKNOWN_CHARACTERISTIC,
                    f"public_accessibility lists {value!r}, not a characteristic of taxonomy {key!r}",
                    taxonomy=key,
                    subject=value,
                )

    return out.sorted()


def _check_characteristics(
    out: FindingCollector,
    taxonomy: str,
    owner: str,
    characteristics: tuple[str, ...],
    default: str | None,
) -> None:
    seen: set[str] = set()
    for value in characteristics:
        if value in seen:
            out.add(
                SEVERITY_ERROR,
                DUPLICATE_CHARACTERISTIC,
                f"characteristic {value!r} declared more than once in {owner!r}",
                taxonomy=taxonomy,
                subject=owner,
            )
        seen.add(value)
    if len(characteristics) < 2:
        out.add(
            SEVERITY_ERROR,
            TOO_FEW_CHARACTERISTICS,
            f"{owner!r} declares {len(characteristics)} characteristics, need at least 2",
            taxonomy=taxonomy,
            subject=owner,
        )
    if default is not None and default not in seen:
        out.add(
            SEVERITY_ERROR,
            BAD_DEFAULT,
            f"default {default!r} is not a characteristic of {owner!r}",
            taxonomy=taxonomy,
            subject=owner,
        )
