"""Finding records: structured, sortable validation results.

A finding never interrupts processing; collecting findings and deciding
what to do with them (print, serialize, map to an exit code) is the
caller's job. Severities: ``error`` (domain violation), ``warning``
(suspicious but tolerated, e.g. conflicting assertions), ``info``
(advisory, e.g. lint results).
"""

from __future__ import annotations

from dataclasses import dataclass, field

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"
SEVERITY_INFO = "info"

# Schema-level codes.
BAD_VERSION = "bad-version"
DUPLICATE_TAXONOMY = "duplicate-taxonomy"
DUPLICATE_DIMENSION = "duplicate-dimension"
DUPLICATE_CHARACTERISTIC = "duplicate-characteristic"
DUPLICATE_SCOPE_NOTE = "duplicate-scope-note"
DUPLICATE_RELATION = "duplicate-relation"
DUPLICATE_CLUSTER_MEMBER = "duplicate-cluster-member"
TOO_FEW_CHARACTERISTICS = "too-few-characteristics"
BAD_DEFAULT = "bad-default"
BAD_CARDINALITY = "bad-cardinality"
DANGLING_RELATION_TARGET = "dangling-relation-target"

# Object-level codes.
UNKNOWN_TAXONOMY = "unknown-taxonomy"
UNKNOWN_DIMENSION = "unknown-dimension"
UNKNOWN_CHARACTERISTIC = "unknown-characteristic"
UNKNOWN_SCOPE_NOTE = "unknown-scope-note"
UNKNOWN_RELATION = "unknown-relation"
MISSING_DIMENSION_VALUE = "missing-dimension-value"
MISSING_SCOPE_NOTE = "missing-scope-note"
MALFORMED_ID = "malformed-id"
DUPLICATE_OBJECT_ID = "duplicate-object-id"
UNNAMED_FACTOR = "unnamed-factor"

# Link- and corpus-level codes.
DUPLICATE_REFERENCE = "duplicate-reference"
UNRESOLVED_RELATION = "unresolved-relation"
CARDINALITY_BREACH = "cardinality-breach"
FACTOR_WITHOUT_DESCRIPTION = "factor-without-description"
APPROACH_WITHOUT_DESCRIPTION = "approach-without-description"
DESCRIPTION_FACTOR_COUNT = "description-factor-count"
CONFLICTING_ASSERTION = "conflicting-assertion"
IMPLICIT_FACTOR = "implicit-factor"

# Lint codes.
LINT_CONCISENESS = "CONCISENESS"
LINT_UNIQUE_CELL = "UNIQUE-CELL"

_SEVERITY_RANK = {SEVERITY_ERROR: 0, SEVERITY_WARNING: 1, SEVERITY_INFO: 2}


@dataclass(frozen=True)
class Finding:
    """One validation result, anchored to whatever context is known."""

    severity: str
    code: str
    message: str
    taxonomy: str | None = None
    reference: str | None = None
    object_id: str | None = None
    subject: str | None = None

    def to_json(self) -> dict:
        """Return a JSON-ready dict, omitting unset context fields."""
        payload: dict = {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
        }
        for key in ("taxonomy", "reference", "object_id", "subject"):
            value = getattr(self, key)
            if value is not None:
                payload[key] = value
        return payload

    def render(self) -> str:
        """Render as a one-line human-readable string."""
        where = [
            part
            for part in (self.reference, self.taxonomy, self.object_id, self.subject)
            if part
        ]
        anchor = f" [{' / '.join(where)}]" if where else ""
        return f"{self.severity.upper()} {self.code}: {self.message}{anchor}"


def finding_sort_key(finding: Finding) -> tuple:
    """Deterministic ordering: errors first, then by code and anchors."""
    return (
        _SEVERITY_RANK.get(finding.severity, 99),
        finding.code,
        finding.reference or "",
        finding.taxonomy or "",
        finding.object_id or "",
        finding.subject or "",
        finding.message,
    )


@dataclass
class FindingCollector:
    """Append-only accumulator used by parsers and validators."""

    items: list[Finding] = field(default_factory=list)

    def add(
        self,
        severity: str,
        code: str,
        message: str,
        *,
        taxonomy: str | None = None,
        reference: str | None = None,
        object_id: str | None = None,
        subject: str | None = None,
    ) -> None:
        self.items.append(
            Finding(
                severity=severity,
                code=code,
                message=message,
                taxonomy=taxonomy,
                reference=reference,
                object_id=object_id,
                subject=subject,
            )
        )

    def sorted(self) -> tuple[Finding, ...]:
        return tuple(sorted(self.items, key=finding_sort_key))
