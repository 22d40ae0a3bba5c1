"""Corpus validation, ending conditions, and lints.

Validation recomputes every content-level finding from a snapshot, so
its report is the single authority a caller needs. The ending
conditions are the five objectively checkable stop criteria of the
iterative construction process; the subjective qualities are listed for
human assessment, never auto-judged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .findings import (
    CONFLICTING_ASSERTION,
    DUPLICATE_OBJECT_ID,
    LINT_CONCISENESS,
    LINT_UNIQUE_CELL,
    MALFORMED_ID,
    MISSING_DIMENSION_VALUE,
    MISSING_SCOPE_NOTE,
    SEVERITY_ERROR,
    SEVERITY_INFO,
    SEVERITY_WARNING,
    UNKNOWN_CHARACTERISTIC,
    UNKNOWN_DIMENSION,
    UNKNOWN_RELATION,
    UNKNOWN_SCOPE_NOTE,
    UNKNOWN_TAXONOMY,
    Finding,
    FindingCollector,
)
from .schema import UNIQUENESS_CODES, _Reader, expand_clusters, load_json, validate_schema
from .snapshot import OntologySnapshot

#: Closed set of schema-change event kinds.
EVENT_KINDS = frozenset(
    {
        "add-dimension",
        "remove-dimension",
        "merge-dimensions",
        "split-dimension",
        "add-characteristic",
        "remove-characteristic",
        "merge-characteristics",
        "split-characteristic",
        "merge-objects",
        "split-objects",
        "add-taxonomy",
    }
)

MERGE_SPLIT_KINDS = frozenset(kind for kind in EVENT_KINDS if "merge" in kind or "split" in kind)
ADDITION_KINDS = frozenset({"add-dimension", "add-characteristic", "add-taxonomy"})

ITERATION_APPROACHES = ("empirical-to-conceptual", "conceptual-to-empirical")

#: Conciseness bounds: seven plus or minus two dimensions per taxonomy,
#: a cluster counting as one.
CONCISENESS_MIN = 5
CONCISENESS_MAX = 9

VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"
VERDICT_NOT_EVALUABLE = "not-evaluable"

CONDITION_KEYS = ("EC1", "EC2", "EC3", "EC4", "EC5")

#: Qualities that cannot be machine-checked; listed, never judged.
SUBJECTIVE_CONDITIONS = (
    ("robust", "objects fit without forcing; requires human assessment"),
    ("comprehensive", "no known object is unclassifiable; requires human assessment"),
    ("extendable", "new objects find a place without rework; requires human assessment"),
    ("explanatory", "the schema explains the domain to newcomers; requires human assessment"),
)


@dataclass(frozen=True)
class ChangeEvent:
    """One schema-change event inside an iteration."""

    kind: str
    taxonomy: str
    details: str = ""


@dataclass(frozen=True)
class IterationLog:
    """One iteration of the construction process."""

    iteration: int
    approach: str
    examined_references: tuple[str, ...] = ()
    events: tuple[ChangeEvent, ...] = ()


@dataclass(frozen=True)
class CorpusManifest:
    """The candidate reference population the corpus was built from."""

    candidate_references: tuple[str, ...] = ()


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of one ending condition with human-readable evidence."""

    verdict: str
    evidence: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "evidence": self.evidence}


@dataclass(frozen=True)
class ValidationReport:
    """All findings for one corpus, grouped by origin."""

    schema_findings: tuple[Finding, ...] = ()
    object_findings: tuple[Finding, ...] = ()
    link_findings: tuple[Finding, ...] = ()
    conflict_findings: tuple[Finding, ...] = ()
    lint_findings: tuple[Finding, ...] = ()

    def all_findings(self) -> tuple[Finding, ...]:
        return (
            self.schema_findings
            + self.object_findings
            + self.link_findings
            + self.conflict_findings
            + self.lint_findings
        )

    def has_errors(self) -> bool:
        return any(f.severity == SEVERITY_ERROR for f in self.all_findings())

    def counts(self) -> dict[str, int]:
        out = {"error": 0, "warning": 0, "info": 0}
        for finding in self.all_findings():
            out[finding.severity] = out.get(finding.severity, 0) + 1
        return out


# --- log and manifest parsing -------------------------------------------------


def parse_iterations(raw: bytes | str, path: str | None = None) -> tuple[IterationLog, ...]:
    """Parse an iteration log file.

    Raises:
        ParseError: structural problems, an unknown event kind or
            approach, or iteration numbers not contiguous from 1.
    """
    reader = _Reader(path)
    data = reader.expect_object(load_json(raw, path), "$")
    reader.check_keys(data, "$", required=("iterations",))

    logs = []
    for index, raw_log in enumerate(reader.expect_array(data["iterations"], "$.iterations")):
        loc = f"$.iterations[{index}]"
        log = reader.expect_object(raw_log, loc)
        reader.check_keys(
            log, loc, required=("iteration", "approach", "examined_references", "events")
        )
        number = reader.expect_int(log["iteration"], f"{loc}.iteration")
        if number != index + 1:
            raise reader.fail(
                f"iteration numbers must be contiguous from 1; expected {index + 1}, got {number}",
                f"{loc}.iteration",
            )
        approach = reader.expect_string(log["approach"], f"{loc}.approach")
        if approach not in ITERATION_APPROACHES:
            raise reader.fail(
                f"unknown approach {approach!r}; expected one of {', '.join(ITERATION_APPROACHES)}",
                f"{loc}.approach",
            )
        examined = reader.string_array(
            log["examined_references"], f"{loc}.examined_references"
        )
        events = []
        for e_index, raw_event in enumerate(
            reader.expect_array(log["events"], f"{loc}.events")
        ):
            e_loc = f"{loc}.events[{e_index}]"
            event = reader.expect_object(raw_event, e_loc)
            reader.check_keys(event, e_loc, required=("kind", "taxonomy"), optional=("details",))
            kind = reader.expect_string(event["kind"], f"{e_loc}.kind")
            if kind not in EVENT_KINDS:
                raise reader.fail(f"unknown event kind {kind!r}", f"{e_loc}.kind")
            events.append(
                ChangeEvent(
                    kind=kind,
                    taxonomy=reader.expect_string(event["taxonomy"], f"{e_loc}.taxonomy"),
                    details=(
                        reader.expect_text(event["details"], f"{e_loc}.details")
                        if "details" in event
                        else ""
                    ),
                )
            )
        logs.append(
            IterationLog(
                iteration=number,
                approach=approach,
                examined_references=examined,
                events=tuple(events),
            )
        )
    return tuple(logs)


def parse_manifest(raw: bytes | str, path: str | None = None) -> CorpusManifest:
    """Parse a corpus manifest file."""
    reader = _Reader(path)
    data = reader.expect_object(load_json(raw, path), "$")
    reader.check_keys(data, "$", required=("candidate_references",))
    candidates = reader.string_array(data["candidate_references"], "$.candidate_references")
    return CorpusManifest(candidate_references=tuple(sorted(set(candidates))))


def iterations_to_json(iterations: tuple[IterationLog, ...]) -> dict:
    """Return the JSON value for an iteration log in canonical shape."""
    return {
        "iterations": [
            {
                "iteration": log.iteration,
                "approach": log.approach,
                "examined_references": list(log.examined_references),
                "events": [
                    (
                        {"kind": e.kind, "taxonomy": e.taxonomy, "details": e.details}
                        if e.details
                        else {"kind": e.kind, "taxonomy": e.taxonomy}
                    )
                    for e in log.events
                ],
            }
            for log in iterations
        ]
    }


def manifest_to_json(manifest: CorpusManifest) -> dict:
    """Return the JSON value for a manifest in canonical shape."""
    return {"candidate_references": list(manifest.candidate_references)}


# --- content validation --------------------------------------------------------


def object_findings(snapshot: OntologySnapshot) -> tuple[Finding, ...]:
    """Per-object findings: vocabulary, ids, required values and notes."""
    out = FindingCollector()
    schema = snapshot.schema
    for ref_key in sorted(snapshot.reference_objects):
        seen_ids: set[str] = set()
        for obj in snapshot.reference_objects[ref_key]:
            if obj.id in seen_ids:
                out.add(
                    SEVERITY_ERROR,
                    DUPLICATE_OBJECT_ID,
                    f"object id {obj.id!r} appears more than once in this record",
                    reference=ref_key,
                    object_id=obj.id,
                )
            seen_ids.add(obj.id)

            prefix = f"{obj.taxonomy}:"
            if not obj.id.startswith(prefix) or len(obj.id) <= len(prefix):
                out.add(
                    SEVERITY_ERROR,
                    MALFORMED_ID,
                    f"object id {obj.id!r} must have the form {obj.taxonomy!r} + ':' + slug",
                    taxonomy=obj.taxonomy,
                    reference=ref_key,
                    object_id=obj.id,
                )

            taxonomy = schema.taxonomy(obj.taxonomy)
            if taxonomy is None:
                out.add(
                    SEVERITY_ERROR,
                    UNKNOWN_TAXONOMY,
                    f"object {obj.id!r} uses unknown taxonomy {obj.taxonomy!r}",
                    reference=ref_key,
                    object_id=obj.id,
                    subject=obj.taxonomy,
                )
                continue

            dims = {dim.name: dim for dim in expand_clusters(taxonomy)}
            for dim_name, value in obj.values.items():
                dim = dims.get(dim_name)
                if dim is None:
                    out.add(
                        SEVERITY_ERROR,
                        UNKNOWN_DIMENSION,
                        f"object {obj.id!r} sets unknown dimension {dim_name!r}",
                        taxonomy=obj.taxonomy,
                        reference=ref_key,
                        object_id=obj.id,
                        subject=dim_name,
                    )
                elif value not in dim.characteristics:
                    out.add(
                        SEVERITY_ERROR,
                        UNKNOWN_CHARACTERISTIC,
                        f"value {value!r} is not a characteristic of dimension {dim_name!r}",
                        taxonomy=obj.taxonomy,
                        reference=ref_key,
                        object_id=obj.id,
                        subject=f"{dim_name}:{value}",
                    )
            for dim in dims.values():
                if dim.name not in obj.values:
                    flavor = "required dimension" if dim.required else "dimension without default"
                    out.add(
                        SEVERITY_ERROR,
                        MISSING_DIMENSION_VALUE,
                        f"object {obj.id!r} has no value for {flavor} {dim.name!r}",
                        taxonomy=obj.taxonomy,
                        reference=ref_key,
                        object_id=obj.id,
                        subject=dim.name,
                    )

            known_notes = {note.name for note in taxonomy.scope_notes}
            for note_name in obj.notes:
                if note_name not in known_notes:
                    out.add(
                        SEVERITY_ERROR,
                        UNKNOWN_SCOPE_NOTE,
                        f"object {obj.id!r} sets unknown scope note {note_name!r}",
                        taxonomy=obj.taxonomy,
                        reference=ref_key,
                        object_id=obj.id,
                        subject=note_name,
                    )
            for note in taxonomy.scope_notes:
                if note.required and not obj.notes.get(note.name, "").strip():
                    out.add(
                        SEVERITY_ERROR,
                        MISSING_SCOPE_NOTE,
                        f"object {obj.id!r} is missing required scope note {note.name!r}",
                        taxonomy=obj.taxonomy,
                        reference=ref_key,
                        object_id=obj.id,
                        subject=note.name,
                    )

            known_relations = {rel.name for rel in taxonomy.relations}
            for rel_name in obj.relations:
                if rel_name not in known_relations:
                    out.add(
                        SEVERITY_ERROR,
                        UNKNOWN_RELATION,
                        f"object {obj.id!r} uses unknown relation {rel_name!r}",
                        taxonomy=obj.taxonomy,
                        reference=ref_key,
                        object_id=obj.id,
                        subject=rel_name,
                    )
    return out.sorted()


def conflict_findings(snapshot: OntologySnapshot) -> tuple[Finding, ...]:
    """Warnings for dimensions on which merged assertions disagree."""
    out = FindingCollector()
    for key in sorted(snapshot.factors):
        node = snapshot.factors[key]
        for dim, conflict in sorted(node.conflicts().items()):
            out.add(
                SEVERITY_WARNING,
                CONFLICTING_ASSERTION,
                f"factor {node.canonical_name!r} has conflicting values for {dim!r}: "
                + " | ".join(conflict.values),
                taxonomy="factor",
                subject=f"{key}.{dim}",
            )
    return out.sorted()


def lint(snapshot: OntologySnapshot) -> tuple[Finding, ...]:
    """Advisory lints: conciseness bounds and shared dimension profiles."""
    out = FindingCollector()
    for tax in snapshot.schema.taxonomies:
        count = len(tax.dimensions) + len(tax.dimension_clusters)
        if not CONCISENESS_MIN <= count <= CONCISENESS_MAX:
            out.add(
                SEVERITY_WARNING,
                LINT_CONCISENESS,
                f"taxonomy {tax.name!r} presents {count} dimensions, "
                f"outside {CONCISENESS_MIN}..{CONCISENESS_MAX} (a cluster counts as one)",
                taxonomy=tax.name,
            )

        by_signature: dict[tuple, list] = {}
        for located in snapshot.objects_of(tax.name):
            signature = tuple(sorted(located.obj.values.items()))
            by_signature.setdefault(signature, []).append(located)
        for signature in sorted(by_signature):
            group = by_signature[signature]
            if len(group) < 2:
                continue
            note_variants = {tuple(sorted(loc.obj.notes.items())) for loc in group}
            if len(note_variants) > 1:
                ids = ", ".join(f"{loc.reference}#{loc.obj.id}" for loc in group)
                out.add(
                    SEVERITY_INFO,
                    LINT_UNIQUE_CELL,
                    f"{len(group)} {tax.name} objects share one dimension profile "
                    f"but differ in notes: {ids}",
                    taxonomy=tax.name,
                )
    return out.sorted()


def validate_corpus(snapshot: OntologySnapshot) -> ValidationReport:
    """Assemble the full validation report for one snapshot."""
    return ValidationReport(
        schema_findings=validate_schema(snapshot.schema),
        object_findings=object_findings(snapshot),
        link_findings=snapshot.link_errors,
        conflict_findings=conflict_findings(snapshot),
        lint_findings=lint(snapshot),
    )


# --- ending conditions ----------------------------------------------------------


def check_ending_conditions(
    snapshot: OntologySnapshot,
    iterations: tuple[IterationLog, ...] | None,
    manifest: CorpusManifest | None,
) -> dict[str, ConditionVerdict]:
    """Evaluate the five objective ending conditions.

    A condition whose inputs are absent is reported ``not-evaluable``
    rather than guessed.
    """
    out: dict[str, ConditionVerdict] = {}

    # EC1: every candidate reference was examined.
    if manifest is None:
        out["EC1"] = ConditionVerdict(VERDICT_NOT_EVALUABLE, "no manifest provided")
    elif iterations is None:
        out["EC1"] = ConditionVerdict(VERDICT_NOT_EVALUABLE, "no iteration log provided")
    else:
        examined: set[str] = set()
        for log in iterations:
            examined.update(log.examined_references)
        missing = sorted(set(manifest.candidate_references) - examined)
        if missing:
            out["EC1"] = ConditionVerdict(VERDICT_FAIL, "unexamined: " + ", ".join(missing))
        else:
            out["EC1"] = ConditionVerdict(
                VERDICT_PASS,
                f"all {len(manifest.candidate_references)} candidate references examined",
            )

    # EC2: the final iteration required no merges or splits.
    out["EC2"] = _final_iteration_scan(
        iterations,
        MERGE_SPLIT_KINDS,
        pass_text="no merge or split events in iteration {n}",
        fail_text="iteration {n} contains: {kinds}",
    )

    # EC3: every characteristic of every dimension is used by >= 1 object.
    usage: dict[str, dict[str, set[str]]] = {}
    for tax in snapshot.schema.taxonomies:
        usage[tax.name] = {dim.name: set() for dim in expand_clusters(tax)}
    for ref_key in snapshot.reference_objects:
        for obj in snapshot.reference_objects[ref_key]:
            dims = usage.get(obj.taxonomy)
            if dims is None:
                continue
            for dim_name, value in obj.values.items():
                if dim_name in dims:
                    dims[dim_name].add(value)
    uncovered = []
    total = 0
    for tax in snapshot.schema.taxonomies:
        for dim in expand_clusters(tax):
            for char in dim.characteristics:
                total += 1
                if char not in usage[tax.name][dim.name]:
                    uncovered.append(f"{tax.name}.{dim.name}:{char}")
    if uncovered:
        out["EC3"] = ConditionVerdict(VERDICT_FAIL, "uncovered: " + ", ".join(sorted(uncovered)))
    else:
        out["EC3"] = ConditionVerdict(VERDICT_PASS, f"all {total} characteristics used")

    # EC4: the final iteration added no dimension, characteristic, or taxonomy.
    out["EC4"] = _final_iteration_scan(
        iterations,
        ADDITION_KINDS,
        pass_text="no addition events in iteration {n}",
        fail_text="iteration {n} contains: {kinds}",
    )

    # EC5: schema uniqueness (dimensions per taxonomy, characteristics per
    # dimension).
    uniqueness = [
        f for f in validate_schema(snapshot.schema) if f.code in UNIQUENESS_CODES
    ]
    if uniqueness:
        details = "; ".join(f.message for f in uniqueness)
        out["EC5"] = ConditionVerdict(VERDICT_FAIL, details)
    else:
        out["EC5"] = ConditionVerdict(VERDICT_PASS, "schema uniqueness holds")

    return out


def _final_iteration_scan(
    iterations: tuple[IterationLog, ...] | None,
    kinds: frozenset[str],
    *,
    pass_text: str,
    fail_text: str,
) -> ConditionVerdict:
    if not iterations:
        return ConditionVerdict(VERDICT_NOT_EVALUABLE, "no iteration log provided")
    final = iterations[-1]
    hits = sorted({event.kind for event in final.events if event.kind in kinds})
    if hits:
        return ConditionVerdict(
            VERDICT_FAIL, fail_text.format(n=final.iteration, kinds=", ".join(hits))
        )
    return ConditionVerdict(VERDICT_PASS, pass_text.format(n=final.iteration))


def all_conditions_pass(conditions: dict[str, ConditionVerdict]) -> bool:
    """True iff every objective condition passed (not-evaluable fails)."""
    return all(
        conditions[key].verdict == VERDICT_PASS for key in CONDITION_KEYS if key in conditions
    ) and all(key in conditions for key in CONDITION_KEYS)
