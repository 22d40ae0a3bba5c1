"""Schema-driven repository engine for a requirements-quality-factor
ontology: parsing, merging, validation, agreement, queries, CLI, and a
read-only HTTP service."""

from .agreement import (
    AgreementReport,
    agreement_report,
    align_objects,
    format_agreement,
    similarity,
)
from .errors import (
    DuplicateReference,
    EmptyComparison,
    EmptyName,
    FieldError,
    LinkError,
    ParseError,
    ReferenceMismatch,
    ReqontError,
    RepositoryError,
    UnknownCharacteristic,
    UnknownFactor,
)
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
from .records import (
    ExtractionRecord,
    OntologyObject,
    Reference,
    canonical_serialize,
    normalize_factor_name,
    parse_extraction,
    parse_extraction_lenient,
)
from .repository import LoadedRepository, RepositoryLayout, load_repository, locate_repository
from .schema import (
    ClusterDef,
    DimensionDef,
    RelationDef,
    ScopeNoteDef,
    TaxonomyDef,
    TaxonomySchema,
    expand_clusters,
    parse_structure,
    serialize_structure,
    validate_schema,
)
from .snapshot import Conflict, FactorNode, Located, OntologySnapshot, build_snapshot
from .validation import (
    ChangeEvent,
    ConditionVerdict,
    CorpusManifest,
    IterationLog,
    ValidationReport,
    check_ending_conditions,
    lint,
    parse_iterations,
    parse_manifest,
    validate_corpus,
)

__version__ = "0.1.0"

__all__ = [
    "AgreementReport",
    "ChangeEvent",
    "ClusterDef",
    "ConditionVerdict",
    "Conflict",
    "CorpusManifest",
    "DimensionDef",
    "DuplicateReference",
    "EmptyComparison",
    "EmptyName",
    "ExtractionRecord",
    "FactorFilter",
    "FactorNode",
    "FactorResources",
    "FieldError",
    "Finding",
    "GapReport",
    "IterationLog",
    "LinkError",
    "LoadedRepository",
    "Located",
    "OntologyObject",
    "OntologySnapshot",
    "ParseError",
    "Reference",
    "ReferenceMismatch",
    "RelationDef",
    "ReqontError",
    "RepositoryError",
    "RepositoryLayout",
    "ScopeNoteDef",
    "SummaryStats",
    "TaxonomyDef",
    "TaxonomySchema",
    "UnknownCharacteristic",
    "UnknownFactor",
    "ValidationReport",
    "agreement_report",
    "align_objects",
    "author_index",
    "build_snapshot",
    "canonical_serialize",
    "check_ending_conditions",
    "expand_clusters",
    "format_agreement",
    "gap_report",
    "lint",
    "load_repository",
    "locate_repository",
    "normalize_factor_name",
    "parse_extraction",
    "parse_extraction_lenient",
    "parse_iterations",
    "parse_manifest",
    "parse_structure",
    "query_factors",
    "resources_for_factor",
    "serialize_structure",
    "similarity",
    "summary_stats",
    "validate_corpus",
    "validate_schema",
]
