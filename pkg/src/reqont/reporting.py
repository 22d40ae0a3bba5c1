"""Report rendering: delimited files plus figures.

Writes a small bundle of CSV files and matplotlib PNG figures
summarizing one snapshot. Uses the Agg backend so it works headless.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import conventions as conv
from .queries import gap_report, summary_stats
from .snapshot import OntologySnapshot

FIGURE_DPI = 120


def write_report(snapshot: OntologySnapshot, out_dir: Path | str) -> tuple[Path, ...]:
    """Write the report bundle into ``out_dir``; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [
        _write_summary_csv(snapshot, out / "summary.csv"),
        _write_factors_csv(snapshot, out / "factors.csv"),
        _write_gaps_csv(snapshot, out / "gaps.csv"),
        _figure_description_histogram(snapshot, out / "descriptions_per_factor.png"),
        _figure_scope_distribution(snapshot, out / "factor_scopes.png"),
        _figure_accessibility(snapshot, out / "resource_accessibility.png"),
    ]
    return tuple(written)


def _write_summary_csv(snapshot: OntologySnapshot, path: Path) -> Path:
    stats = summary_stats(snapshot)
    rows = [
        ("n_references", stats.n_references),
        ("n_references_with_factor", stats.n_references_with_factor),
        ("n_factors", stats.n_factors),
        ("n_descriptions", stats.n_descriptions),
        ("n_datasets", stats.n_datasets),
        ("n_approaches", stats.n_approaches),
        ("n_datasets_public", stats.n_datasets_public),
        ("n_approaches_public", stats.n_approaches_public),
        (
            "n_descriptions_with_evidence_or_practitioners",
            stats.n_descriptions_with_evidence_or_practitioners,
        ),
        ("n_descriptions_with_impact", stats.n_descriptions_with_impact),
    ]
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("metric", "value"))
        writer.writerows(rows)
        for count, n in stats.description_count_histogram.items():
            writer.writerow((f"factors_with_{count}_descriptions", n))
    return path


def _write_factors_csv(snapshot: OntologySnapshot, path: Path) -> Path:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ("key", "name", "implicit", "n_descriptions", "n_datasets", "n_approaches", "scope")
        )
        for key in sorted(snapshot.factors):
            node = snapshot.factors[key]
            scope = node.merged_values.get(conv.SCOPE_DIMENSION, "")
            writer.writerow(
                (
                    key,
                    node.canonical_name,
                    "yes" if node.implicit else "no",
                    len(snapshot.factor_descriptions.get(key, ())),
                    len(snapshot.factor_datasets.get(key, ())),
                    len(snapshot.factor_approaches.get(key, ())),
                    scope if isinstance(scope, str) else scope.render(),
                )
            )
    return path


def _write_gaps_csv(snapshot: OntologySnapshot, path: Path) -> Path:
    report = gap_report(snapshot)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("gap", "subject", "detail"))
        for entry in report.factors_without_approach:
            writer.writerow(("factor-without-approach", entry.name, ", ".join(entry.references)))
        for entry in report.factors_without_dataset:
            writer.writerow(("factor-without-dataset", entry.name, ", ".join(entry.references)))
        for entry in report.descriptions_without_evidence:
            writer.writerow(
                ("description-without-evidence", f"{entry.reference}#{entry.object_id}", "")
            )
        for entry in report.descriptions_without_impact:
            writer.writerow(
                ("description-without-impact", f"{entry.reference}#{entry.object_id}", "")
            )
        for entry in report.undisclosed_resources:
            writer.writerow(
                ("undisclosed-resource", f"{entry.reference}#{entry.object_id}", entry.taxonomy)
            )
    return path


def _bar_figure(path: Path, title: str, labels: list[str], counts: list[int], xlabel: str) -> Path:
    fig, ax = plt.subplots(figsize=(7, 4))
    if labels:
        ax.bar(range(len(labels)), counts, color="#4878a8")
        ax.set_xticks(range(len(labels)))
        ax.set_xticklabels(labels, rotation=30, ha="right")
    else:
        ax.text(0.5, 0.5, "no data", ha="center", va="center", transform=ax.transAxes)
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("count")
    ax.yaxis.get_major_locator().set_params(integer=True)
    fig.tight_layout()
    fig.savefig(path, dpi=FIGURE_DPI)
    plt.close(fig)
    return path


def _figure_description_histogram(snapshot: OntologySnapshot, path: Path) -> Path:
    histogram = summary_stats(snapshot).description_count_histogram
    labels = [str(count) for count in histogram]
    return _bar_figure(
        path,
        "Descriptions per factor",
        labels,
        list(histogram.values()),
        "descriptions",
    )


def _figure_scope_distribution(snapshot: OntologySnapshot, path: Path) -> Path:
    counts: dict[str, int] = {}
    for key in sorted(snapshot.factors):
        value = snapshot.factors[key].merged_values.get(conv.SCOPE_DIMENSION)
        if isinstance(value, str):
            counts[value] = counts.get(value, 0) + 1
    labels = sorted(counts)
    return _bar_figure(
        path,
        "Factors by scope",
        labels,
        [counts[label] for label in labels],
        conv.SCOPE_DIMENSION,
    )


def _figure_accessibility(snapshot: OntologySnapshot, path: Path) -> Path:
    counts: dict[str, int] = {}
    for taxonomy in (conv.DATASET, conv.APPROACH):
        for located in snapshot.objects_of(taxonomy):
            value = located.obj.values.get(conv.ACCESSIBILITY_DIMENSION)
            if value:
                label = f"{taxonomy}: {value}"
                counts[label] = counts.get(label, 0) + 1
    labels = sorted(counts)
    return _bar_figure(
        path,
        "Resource accessibility",
        labels,
        [counts[label] for label in labels],
        conv.ACCESSIBILITY_DIMENSION,
    )
