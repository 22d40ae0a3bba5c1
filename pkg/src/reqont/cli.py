"""Command-line interface.

Exit codes: 0 clean, 1 domain violations (validation errors, unknown
vocabulary, failed ending conditions), 2 parse/layout/usage problems.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .agreement import agreement_report, format_agreement
from .canonical import canonical_json_bytes
from .errors import ParseError, ReqontError, RepositoryError
from .payloads import (
    agreement_payload,
    conditions_payload,
    factors_payload,
    gaps_payload,
    render_authors_text,
    render_conditions_text,
    render_gaps_text,
    render_stats_text,
    render_validation_text,
    stats_payload,
    validation_payload,
    authors_payload,
)
from .queries import FactorFilter, gap_report, query_factors, summary_stats
from .records import canonical_serialize, parse_extraction_lenient
from .repository import load_repository, locate_repository
from .reporting import write_report
from .schema import parse_structure, serialize_structure
from .service import ServiceConfig, serve
from .validation import (
    check_ending_conditions,
    all_conditions_pass,
    iterations_to_json,
    manifest_to_json,
    parse_iterations,
    parse_manifest,
    validate_corpus,
)

EXIT_CLEAN = 0
EXIT_VIOLATIONS = 1
EXIT_UNUSABLE = 2


def _guarded(fn):
    """Map engine errors onto the CLI exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ParseError, RepositoryError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_UNUSABLE)
        except ReqontError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_VIOLATIONS)

    return wrapper


repo_option = click.option(
    "--repo",
    envvar="REQONT_REPO",
    default=".",
    show_default=True,
    type=click.Path(path_type=Path),
    help="Repository root (env: REQONT_REPO).",
)
format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"]),
    default="text",
    show_default=True,
    help="Output format.",
)


def _emit_json(payload: object) -> None:
    click.echo(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))


@click.group()
@click.version_option(package_name="reqont")
def cli() -> None:
    """Repository engine for a requirements-quality-factor ontology."""


@cli.command()
@repo_option
@format_option
@_guarded
def validate(repo: Path, fmt: str) -> None:
    """Check the whole repository; exit 1 on violations."""
    loaded = load_repository(repo)
    report = validate_corpus(loaded.snapshot)
    if fmt == "json":
        _emit_json(validation_payload(report))
    else:
        click.echo(render_validation_text(report))
    if report.has_errors():
        sys.exit(EXIT_VIOLATIONS)


@cli.command()
@repo_option
@format_option
@_guarded
def stats(repo: Path, fmt: str) -> None:
    """Corpus-level counts."""
    loaded = load_repository(repo)
    if fmt == "json":
        _emit_json(stats_payload(loaded.snapshot))
    else:
        click.echo(render_stats_text(summary_stats(loaded.snapshot)))


@cli.command()
@repo_option
@format_option
@click.option("--scope", default=None, help="Match factors asserted at this scope.")
@click.option("--aspect", default=None, help="Impacted-aspect dimension (pairs with --impact).")
@click.option("--impact", default=None, help="Required value of --aspect.")
@click.option("--text-query", default=None, help="Substring over names and definitions.")
@click.option("--has-approach", type=bool, default=None, help="Require (or exclude) approaches.")
@click.option("--has-dataset", type=bool, default=None, help="Require (or exclude) datasets.")
@click.option("--accessibility", default=None, help="Require a linked resource accessibility.")
@click.option("--evidence", type=bool, default=None, help="Require described with evidence.")
@click.option(
    "--practitioners", type=bool, default=None, help="Require practitioner involvement."
)
@click.option(
    "--limit",
    type=int,
    default=-1,
    help="Cap the result window (-1 returns everything); echoed in JSON output.",
)
@click.option("--offset", type=int, default=0, help="Skip this many matches first.")
@_guarded
def query(
    repo: Path,
    fmt: str,
    scope: str | None,
    aspect: str | None,
    impact: str | None,
    text_query: str | None,
    has_approach: bool | None,
    has_dataset: bool | None,
    accessibility: str | None,
    evidence: bool | None,
    practitioners: bool | None,
    limit: int,
    offset: int,
) -> None:
    """List factors matching every given criterion."""
    if (aspect is None) != (impact is None):
        raise click.UsageError("--aspect and --impact must be provided together")
    loaded = load_repository(repo)
    flt = FactorFilter(
        scope=scope,
        aspect=(aspect, impact) if aspect is not None and impact is not None else None,
        text_query=text_query,
        has_approach=has_approach,
        has_dataset=has_dataset,
        accessibility=accessibility,
        evidence=evidence,
        practitioners=practitioners,
    )
    if fmt == "json":
        _emit_json(factors_payload(loaded.snapshot, flt, limit=limit, offset=offset))
    else:
        nodes = query_factors(loaded.snapshot, flt)
        window = nodes[offset : offset + limit] if limit >= 0 else nodes[offset:]
        for node in window:
            click.echo(node.canonical_name)


@cli.command()
@repo_option
@format_option
@_guarded
def gaps(repo: Path, fmt: str) -> None:
    """Where the evidence base is thin."""
    loaded = load_repository(repo)
    if fmt == "json":
        _emit_json(gaps_payload(loaded.snapshot))
    else:
        click.echo(render_gaps_text(gap_report(loaded.snapshot)))


@cli.command()
@repo_option
@format_option
@_guarded
def authors(repo: Path, fmt: str) -> None:
    """Author index: who contributed which parts."""
    loaded = load_repository(repo)
    if fmt == "json":
        _emit_json(authors_payload(loaded.snapshot))
    else:
        click.echo(render_authors_text(loaded.snapshot))


@cli.command()
@click.argument("dir_a", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.argument("dir_b", type=click.Path(exists=True, file_okay=False, path_type=Path))
@format_option
@_guarded
def agreement(dir_a: Path, dir_b: Path, fmt: str) -> None:
    """Inter-annotator agreement between two repositories.

    Both directories must be repositories; the schema of DIR_A is used
    to interpret both corpora.
    """
    layout_a = locate_repository(dir_a)
    layout_b = locate_repository(dir_b)
    schema = parse_structure(layout_a.structure_path.read_bytes(), str(layout_a.structure_path))

    def read_records(layout):
        records = []
        for path in layout.extraction_paths():
            record, _ = parse_extraction_lenient(path.read_bytes(), schema, str(path))
            records.append(record)
        return records

    report = agreement_report(read_records(layout_a), read_records(layout_b), schema)
    if fmt == "json":
        _emit_json(agreement_payload(report))
    else:
        click.echo(format_agreement(report))


@cli.command(name="exit-check")
@repo_option
@format_option
@_guarded
def exit_check(repo: Path, fmt: str) -> None:
    """Evaluate the objective ending conditions; exit 1 unless all pass."""
    loaded = load_repository(repo)
    conditions = check_ending_conditions(loaded.snapshot, loaded.iterations, loaded.manifest)
    if fmt == "json":
        _emit_json(conditions_payload(conditions))
    else:
        click.echo(render_conditions_text(conditions))
    if not all_conditions_pass(conditions):
        sys.exit(EXIT_VIOLATIONS)


@cli.command(name="fmt")
@repo_option
@click.option("--check", is_flag=True, help="Report non-canonical files; write nothing.")
@_guarded
def fmt_cmd(repo: Path, check: bool) -> None:
    """Rewrite repository files into canonical form."""
    layout = locate_repository(repo)
    schema = parse_structure(layout.structure_path.read_bytes(), str(layout.structure_path))

    jobs: list[tuple[Path, bytes]] = [
        (layout.structure_path, serialize_structure(schema))
    ]
    for path in layout.extraction_paths():
        record, _ = parse_extraction_lenient(path.read_bytes(), schema, str(path))
        jobs.append((path, canonical_serialize(record)))
    if layout.iterations_path:
        iterations = parse_iterations(
            layout.iterations_path.read_bytes(), str(layout.iterations_path)
        )
        jobs.append((layout.iterations_path, canonical_json_bytes(iterations_to_json(iterations))))
    if layout.manifest_path:
        manifest = parse_manifest(layout.manifest_path.read_bytes(), str(layout.manifest_path))
        jobs.append((layout.manifest_path, canonical_json_bytes(manifest_to_json(manifest))))

    dirty = []
    for path, canonical in jobs:
        if path.read_bytes() != canonical:
            dirty.append(path)
            if not check:
                path.write_bytes(canonical)
    if check and dirty:
        for path in dirty:
            click.echo(f"not canonical: {path}")
        sys.exit(EXIT_VIOLATIONS)
    if not check:
        for path in dirty:
            click.echo(f"rewrote: {path}")


@cli.command(name="serve")
@repo_option
@click.option("--bind", default="127.0.0.1", show_default=True, help="Interface to bind.")
@click.option("--port", type=click.IntRange(1, 65535), default=8000, show_default=True)
@click.option(
    "--reload-mode",
    type=click.Choice(["on-signal", "none"]),
    default="on-signal",
    show_default=True,
    help="on-signal: SIGHUP swaps in a freshly loaded snapshot.",
)
@_guarded
def serve_cmd(repo: Path, bind: str, port: int, reload_mode: str) -> None:
    """Serve the repository over HTTP (read-only)."""
    serve(ServiceConfig(repo_root=repo, bind=bind, port=port, reload_mode=reload_mode))


@cli.command()
@repo_option
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    required=True,
    help="Directory for the report bundle.",
)
@_guarded
def report(repo: Path, out: Path) -> None:
    """Write CSV summaries and figures to a directory."""
    loaded = load_repository(repo)
    for path in write_report(loaded.snapshot, out):
        click.echo(str(path))


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
