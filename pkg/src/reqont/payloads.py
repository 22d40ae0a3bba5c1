"""JSON payload builders and text renderers.

The CLI and the HTTP service both render through these functions, so a
query answered on the command line and over the wire is the same
payload by construction.
"""

from __future__ import annotations

from .agreement import AgreementReport
from .findings import Finding
from .queries import (
    FactorFilter,
    FactorResources,
    GapReport,
    SummaryStats,
    author_index,
    gap_report,
    query_factors,
    resources_for_factor,
    summary_stats,
)
from .schema import TaxonomySchema, UNBOUNDED, expand_clusters, structure_to_json
from .snapshot import Conflict, FactorNode, Located, OntologySnapshot
from .validation import (
    CONDITION_KEYS,
    SUBJECTIVE_CONDITIONS,
    ConditionVerdict,
    ValidationReport,
    all_conditions_pass,
)

# --- schema ---------------------------------------------------------------------


def schema_payload(snapshot: OntologySnapshot) -> dict:
    schema: TaxonomySchema = snapshot.schema
    payload = structure_to_json(schema)
    for tax, entry in zip(schema.taxonomies, payload["taxonomies"]):
        entry["expanded_dimensions"] = [
            {
                "name": dim.name,
                "characteristics": list(dim.characteristics),
                "default": dim.default,
                "required": dim.required,
            }
            for dim in expand_clusters(tax)
        ]
        for relation in entry["relations"]:
            if relation["max"] == "unbounded":
                relation["max"] = None
    return payload


# --- factors ---------------------------------------------------------------------


def _merged_value_json(value: str | Conflict) -> object:
    if isinstance(value, Conflict):
        return {"conflict": list(value.values)}
    return value


def object_payload(located: Located) -> dict:
    return {
        "reference": located.reference,
        "id": located.obj.id,
        "taxonomy": located.obj.taxonomy,
        "values": dict(located.obj.values),
        "notes": dict(located.obj.notes),
        "relations": {name: list(t) for name, t in located.obj.relations.items()},
    }


def factor_summary_payload(snapshot: OntologySnapshot, node: FactorNode) -> dict:
    references = sorted(
        {loc.reference for loc in node.assertions}
        | {loc.reference for loc in snapshot.factor_descriptions.get(node.key, ())}
    )
    return {
        "key": node.key,
        "name": node.canonical_name,
        "implicit": node.implicit,
        "aliases": list(node.aliases),
        "values": {dim: _merged_value_json(v) for dim, v in node.merged_values.items()},
        "n_descriptions": len(snapshot.factor_descriptions.get(node.key, ())),
        "n_datasets": len(snapshot.factor_datasets.get(node.key, ())),
        "n_approaches": len(snapshot.factor_approaches.get(node.key, ())),
        "references": references,
    }


def factors_payload(
    snapshot: OntologySnapshot,
    flt: FactorFilter,
    *,
    limit: int = 100,
    offset: int = 0,
) -> dict:
    nodes = query_factors(snapshot, flt)
    window = nodes[offset : offset + limit] if limit >= 0 else nodes[offset:]
    return {
        "total": len(nodes),
        "limit": limit,
        "offset": offset,
        "items": [factor_summary_payload(snapshot, node) for node in window],
    }


def factor_detail_payload(snapshot: OntologySnapshot, resources: FactorResources) -> dict:
    payload = factor_summary_payload(snapshot, resources.node)
    payload["assertions"] = [
        {"reference": loc.reference, "object_id": loc.obj.id}
        for loc in resources.node.assertions
    ]
    payload["descriptions"] = [object_payload(loc) for loc in resources.descriptions]
    payload["datasets"] = [object_payload(loc) for loc in resources.datasets]
    payload["approaches"] = [object_payload(loc) for loc in resources.approaches]
    payload["references"] = list(resources.references)
    return payload


def resources_payload(snapshot: OntologySnapshot, name_or_key: str) -> dict:
    resources = resources_for_factor(snapshot, name_or_key)
    return {
        "key": resources.node.key,
        "name": resources.node.canonical_name,
        "descriptions": [object_payload(loc) for loc in resources.descriptions],
        "datasets": [object_payload(loc) for loc in resources.datasets],
        "approaches": [object_payload(loc) for loc in resources.approaches],
        "references": list(resources.references),
    }


def collection_payload(
    snapshot: OntologySnapshot,
    taxonomy: str,
    *,
    accessibility: str | None = None,
    limit: int = 100,
    offset: int = 0,
) -> dict:
    from . import conventions as conv

    items = [
        located
        for located in snapshot.objects_of(taxonomy)
        if accessibility is None
        or located.obj.values.get(conv.ACCESSIBILITY_DIMENSION) == accessibility
    ]
    window = items[offset : offset + limit] if limit >= 0 else items[offset:]
    return {
        "total": len(items),
        "limit": limit,
        "offset": offset,
        "items": [object_payload(loc) for loc in window],
    }


# --- stats, gaps, authors -----------------------------------------------------------


def stats_payload(snapshot: OntologySnapshot) -> dict:
    stats = summary_stats(snapshot)
    return {
        "n_references": stats.n_references,
        "n_references_with_factor": stats.n_references_with_factor,
        "n_factors": stats.n_factors,
        "n_descriptions": stats.n_descriptions,
        "n_datasets": stats.n_datasets,
        "n_approaches": stats.n_approaches,
        "n_datasets_public": stats.n_datasets_public,
        "n_approaches_public": stats.n_approaches_public,
        "n_descriptions_with_evidence_or_practitioners": (
            stats.n_descriptions_with_evidence_or_practitioners
        ),
        "n_descriptions_with_impact": stats.n_descriptions_with_impact,
        "description_count_histogram": {
            str(count): n for count, n in stats.description_count_histogram.items()
        },
    }


def render_stats_text(stats: SummaryStats) -> str:
    histogram = "; ".join(f"{k}: {v}" for k, v in stats.description_count_histogram.items())
    return "\n".join(
        [
            f"references: {stats.n_references}",
            f"references with at least one factor: {stats.n_references_with_factor}",
            f"factors: {stats.n_factors}",
            f"descriptions: {stats.n_descriptions}",
            f"datasets: {stats.n_datasets} (public: {stats.n_datasets_public})",
            f"approaches: {stats.n_approaches} (public: {stats.n_approaches_public})",
            "descriptions with evidence or practitioners: "
            f"{stats.n_descriptions_with_evidence_or_practitioners}",
            f"descriptions with impact: {stats.n_descriptions_with_impact}",
            f"descriptions per factor histogram: {histogram or '(empty)'}",
        ]
    )


def gaps_payload(snapshot: OntologySnapshot) -> dict:
    report = gap_report(snapshot)
    return {
        "factors_without_approach": [
            {"key": e.factor_key, "name": e.name, "references": list(e.references)}
            for e in report.factors_without_approach
        ],
        "factors_without_dataset": [
            {"key": e.factor_key, "name": e.name, "references": list(e.references)}
            for e in report.factors_without_dataset
        ],
        "descriptions_without_evidence": [
            {"reference": e.reference, "object_id": e.object_id, "factor": e.factor_key}
            for e in report.descriptions_without_evidence
        ],
        "descriptions_without_impact": [
            {"reference": e.reference, "object_id": e.object_id, "factor": e.factor_key}
            for e in report.descriptions_without_impact
        ],
        "undisclosed_resources": [
            {
                "taxonomy": e.taxonomy,
                "reference": e.reference,
                "object_id": e.object_id,
                "name": e.name,
                "accessibility": e.accessibility,
            }
            for e in report.undisclosed_resources
        ],
    }


def render_gaps_text(report: GapReport) -> str:
    lines = []

    def factor_block(title: str, entries) -> None:
        lines.append(f"{title}: {len(entries)}")
        for entry in entries:
            refs = ", ".join(entry.references)
            lines.append(f"  - {entry.name} ({refs})" if refs else f"  - {entry.name}")

    factor_block("factors without approach", report.factors_without_approach)
    factor_block("factors without dataset", report.factors_without_dataset)
    lines.append(f"descriptions without evidence: {len(report.descriptions_without_evidence)}")
    for entry in report.descriptions_without_evidence:
        lines.append(f"  - {entry.reference}#{entry.object_id}")
    lines.append(f"descriptions without impact: {len(report.descriptions_without_impact)}")
    for entry in report.descriptions_without_impact:
        lines.append(f"  - {entry.reference}#{entry.object_id}")
    lines.append(f"undisclosed resources: {len(report.undisclosed_resources)}")
    for entry in report.undisclosed_resources:
        label = entry.name or entry.object_id
        lines.append(f"  - {entry.taxonomy} {label} ({entry.reference})")
    return "\n".join(lines)


def authors_payload(snapshot: OntologySnapshot) -> dict:
    return {
        "authors": [
            {
                "author": entry.author,
                "references": list(entry.references),
                "factors": list(entry.factors),
                "datasets": list(entry.datasets),
                "approaches": list(entry.approaches),
            }
            for entry in author_index(snapshot)
        ]
    }


def render_authors_text(snapshot: OntologySnapshot) -> str:
    lines = []
    for entry in author_index(snapshot):
        lines.append(f"{entry.author}")
        lines.append(f"  references: {', '.join(entry.references)}")
        if entry.factors:
            lines.append(f"  factors: {', '.join(entry.factors)}")
        if entry.datasets:
            lines.append(f"  datasets: {', '.join(entry.datasets)}")
        if entry.approaches:
            lines.append(f"  approaches: {', '.join(entry.approaches)}")
    return "\n".join(lines)


# --- validation and conditions --------------------------------------------------------


def _findings_json(findings: tuple[Finding, ...]) -> list[dict]:
    return [finding.to_json() for finding in findings]


def validation_payload(report: ValidationReport) -> dict:
    return {
        "clean": not report.has_errors(),
        "counts": report.counts(),
        "findings": {
            "schema": _findings_json(report.schema_findings),
            "objects": _findings_json(report.object_findings),
            "links": _findings_json(report.link_findings),
            "conflicts": _findings_json(report.conflict_findings),
            "lints": _findings_json(report.lint_findings),
        },
    }


def render_validation_text(report: ValidationReport) -> str:
    counts = report.counts()
    lines = [
        f"errors: {counts['error']}, warnings: {counts['warning']}, info: {counts['info']}"
    ]
    sections = (
        ("schema", report.schema_findings),
        ("objects", report.object_findings),
        ("links", report.link_findings),
        ("conflicts", report.conflict_findings),
        ("lints", report.lint_findings),
    )
    for title, findings in sections:
        if not findings:
            continue
        lines.append(f"{title}:")
        for finding in findings:
            lines.append(f"  {finding.render()}")
    if not report.all_findings():
        lines.append("no findings")
    return "\n".join(lines)


def conditions_payload(conditions: dict[str, ConditionVerdict]) -> dict:
    return {
        "conditions": {key: conditions[key].to_json() for key in CONDITION_KEYS},
        "subjective": [
            {"name": name, "note": note} for name, note in SUBJECTIVE_CONDITIONS
        ],
        "all_pass": all_conditions_pass(conditions),
    }


def render_conditions_text(conditions: dict[str, ConditionVerdict]) -> str:
    lines = []
    for key in CONDITION_KEYS:
        verdict = conditions[key]
        lines.append(f"{key}: {verdict.verdict} ({verdict.evidence})")
    lines.append("subjective (not machine-checked):")
    for name, note in SUBJECTIVE_CONDITIONS:
        lines.append(f"  {name}: {note}")
    return "\n".join(lines)


# --- agreement ---------------------------------------------------------------------------


def agreement_payload(report: AgreementReport) -> dict:
    return {
        "n_values": report.n_values,
        "mean_agreement": report.mean_agreement,
        "common_references": list(report.common_references),
        "only_in_a": list(report.only_in_a),
        "only_in_b": list(report.only_in_b),
        "unmatched_a": list(report.unmatched_a),
        "unmatched_b": list(report.unmatched_b),
        "per_reference": {
            key: {"n": n, "agreement": mean}
            for key, (n, mean) in report.per_reference.items()
        },
        "per_kind": {
            kind: {"n": n, "agreement": mean}
            for kind, (n, mean) in report.per_kind.items()
        },
    }
