"""On-disk repository layout and loading.

A repository is a directory with ``structure.json``, an ``extractions/``
directory of one JSON file per reference, and optionally
``iterations.json`` and ``manifest.json``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import RepositoryError
from .records import ExtractionRecord, parse_extraction_lenient
from .schema import TaxonomySchema, parse_structure
from .snapshot import OntologySnapshot, build_snapshot
from .validation import CorpusManifest, IterationLog, parse_iterations, parse_manifest

STRUCTURE_FILE = "structure.json"
EXTRACTIONS_DIR = "extractions"
ITERATIONS_FILE = "iterations.json"
MANIFEST_FILE = "manifest.json"


@dataclass(frozen=True)
class RepositoryLayout:
    """Resolved paths of one repository."""

    root: Path
    structure_path: Path
    extractions_dir: Path
    iterations_path: Path | None = None
    manifest_path: Path | None = None

    def extraction_paths(self) -> tuple[Path, ...]:
        return tuple(sorted(self.extractions_dir.glob("*.json")))


def locate_repository(root: Path | str) -> RepositoryLayout:
    """Resolve the layout under ``root``.

    Raises:
        RepositoryError: the structure file or extractions directory is
            missing.
    """
    root = Path(root)
    structure_path = root / STRUCTURE_FILE
    extractions_dir = root / EXTRACTIONS_DIR
    if not structure_path.is_file():
        raise RepositoryError(f"{root}: no {STRUCTURE_FILE} found")
    if not extractions_dir.is_dir():
        raise RepositoryError(f"{root}: no {EXTRACTIONS_DIR}/ directory found")
    iterations_path = root / ITERATIONS_FILE
    manifest_path = root / MANIFEST_FILE
    return RepositoryLayout(
        root=root,
        structure_path=structure_path,
        extractions_dir=extractions_dir,
        iterations_path=iterations_path if iterations_path.is_file() else None,
        manifest_path=manifest_path if manifest_path.is_file() else None,
    )


@dataclass(frozen=True)
class LoadedRepository:
    """Everything a repository contains, parsed and linked."""

    layout: RepositoryLayout
    schema: TaxonomySchema
    records: tuple[ExtractionRecord, ...]
    snapshot: OntologySnapshot
    iterations: tuple[IterationLog, ...] | None = None
    manifest: CorpusManifest | None = None


def load_repository(root: Path | str) -> LoadedRepository:
    """Load and link a repository.

    Parsing is lenient about vocabulary so that validation can report
    on it; structural problems (bad JSON, wrong kinds, unknown keys)
    raise ParseError. The snapshot is built in lenient mode: link
    problems end up in ``snapshot.link_errors``.

    Raises:
        RepositoryError: unusable layout.
        ParseError: any file that cannot be parsed.
    """
    layout = locate_repository(root)
    schema = parse_structure(
        layout.structure_path.read_bytes(), str(layout.structure_path)
    )
    records = []
    for path in layout.extraction_paths():
        record, _ = parse_extraction_lenient(path.read_bytes(), schema, str(path))
        records.append(record)
    snapshot = build_snapshot(schema, records, strict=False)
    iterations = (
        parse_iterations(layout.iterations_path.read_bytes(), str(layout.iterations_path))
        if layout.iterations_path
        else None
    )
    manifest = (
        parse_manifest(layout.manifest_path.read_bytes(), str(layout.manifest_path))
        if layout.manifest_path
        else None
    )
    return LoadedRepository(
        layout=layout,
        schema=schema,
        records=tuple(records),
        snapshot=snapshot,
        iterations=iterations,
        manifest=manifest,
    )
