// Pure HTML-string renderers.  Every number shown comes verbatim from
// one API response field — the client never recomputes domain values —
// which keeps these functions testable against recorded responses.

import type {
  AuthorsPayload,
  CollectionPage,
  FactorDetail,
  FactorSummary,
  FactorsPage,
  FindingPayload,
  GapsPayload,
  ObjectPayload,
  StatsPayload,
  ValidationPayload,
} from "./types.js";
import { encodeState, type Filters } from "./state.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

function detailHref(key: string): string {
  return escapeHtml(encodeState({ page: "factor-detail", factorKey: key, filters: {} }));
}

function factorValue(factor: FactorSummary, dimension: string): string {
  const value = factor.values[dimension];
  if (value === undefined) return "";
  if (typeof value === "string") return value;
  return `conflict: ${value.conflict.join(" / ")}`;
}

// --- factor list -------------------------------------------------------------------

export function renderFactorTable(page: FactorsPage): string {
  if (page.items.length === 0) {
    return (
      '<div class="empty-state">No factors match the current filters.' +
      "</div>"
    );
  }
  const rows = page.items
    .map((factor) => {
      const badges =
        `<span class="badge badge-desc" title="descriptions">D:${factor.n_descriptions}</span> ` +
        `<span class="badge badge-data" title="datasets">S:${factor.n_datasets}</span> ` +
        `<span class="badge badge-appr" title="approaches">A:${factor.n_approaches}</span>`;
      const implicit = factor.implicit
        ? ' <span class="badge badge-implicit">implicit</span>'
        : "";
      return (
        '<tr class="factor-row">' +
        `<td><a href="${detailHref(factor.key)}">${escapeHtml(factor.name)}</a>${implicit}</td>` +
        `<td>${escapeHtml(factorValue(factor, "scope"))}</td>` +
        `<td>${badges}</td>` +
        `<td>${factor.references.map(escapeHtml).join(", ")}</td>` +
        "</tr>"
      );
    })
    .join("\n");
  return (
    `<p class="result-count">${page.total} factor(s)</p>` +
    '<table class="factor-table">' +
    "<thead><tr><th>factor</th><th>scope</th><th>resources</th><th>references</th></tr></thead>" +
    `<tbody>${rows}</tbody></table>`
  );
}

// --- factor detail -----------------------------------------------------------------

function noteHasLink(notes: Record<string, string>): boolean {
  return Object.values(notes).some((text) => /https?:\/\//.test(text));
}

export function accessibilityBadge(obj: ObjectPayload): string {
  const value = obj.values["accessibility"] ?? "not disclosed";
  const label =
    value === "private" && !noteHasLink(obj.notes) ? "private, no source" : value;
  return `<span class="badge badge-access">${escapeHtml(label)}</span>`;
}

function renderNotes(obj: ObjectPayload, skip: string[] = []): string {
  return Object.entries(obj.notes)
    .filter(([name]) => !skip.includes(name))
    .map(
      ([name, text]) =>
        `<p class="note"><span class="note-name">${escapeHtml(name)}:</span> ${escapeHtml(text)}</p>`,
    )
    .join("");
}

function renderDescriptionCard(obj: ObjectPayload): string {
  const flags: string[] = [];
  if (obj.values["empirical evidence"] === "yes") flags.push("evidence");
  if (obj.values["practitioners involved"] === "yes") flags.push("practitioners");
  const flagHtml = flags
    .map((flag) => `<span class="badge badge-flag">${flag}</span>`)
    .join(" ");
  const definition = obj.notes["definition"] ?? "";
  const impact = obj.notes["impact"];
  return (
    '<article class="card description-card">' +
    `<header>${escapeHtml(obj.id)} <span class="muted">(${escapeHtml(obj.reference)})</span> ${flagHtml}</header>` +
    `<p class="definition">${escapeHtml(definition)}</p>` +
    (impact ? `<p class="impact"><span class="note-name">impact:</span> ${escapeHtml(impact)}</p>` : "") +
    "</article>"
  );
}

function renderResourceCard(obj: ObjectPayload): string {
  const name = obj.notes["name"] ?? obj.id;
  return (
    '<article class="card resource-card">' +
    `<header>${escapeHtml(name)} ${accessibilityBadge(obj)} <span class="muted">(${escapeHtml(obj.reference)})</span></header>` +
    renderNotes(obj, ["name"]) +
    '<dl class="values">' +
    Object.entries(obj.values)
      .map(([dim, value]) => `<dt>${escapeHtml(dim)}</dt><dd>${escapeHtml(value)}</dd>`)
      .join("") +
    "</dl></article>"
  );
}

export function renderFactorDetail(detail: FactorDetail): string {
  const values = Object.entries(detail.values)
    .map(
      ([dim, value]) =>
        `<dt>${escapeHtml(dim)}</dt><dd>${escapeHtml(
          typeof value === "string" ? value : `conflict: ${value.conflict.join(" / ")}`,
        )}</dd>`,
    )
    .join("");
  const aliases = detail.aliases.length
    ? `<p class="muted">also known as: ${detail.aliases.map(escapeHtml).join(", ")}</p>`
    : "";
  return (
    '<section class="factor-detail">' +
    `<h2>${escapeHtml(detail.name)}</h2>` +
    aliases +
    `<dl class="values">${values}</dl>` +
    `<h3>descriptions (${detail.descriptions.length})</h3>` +
    detail.descriptions.map(renderDescriptionCard).join("\n") +
    `<h3>datasets (${detail.datasets.length})</h3>` +
    (detail.datasets.map(renderResourceCard).join("\n") ||
      '<p class="empty-state">no datasets annotate this factor</p>') +
    `<h3>approaches (${detail.approaches.length})</h3>` +
    (detail.approaches.map(renderResourceCard).join("\n") ||
      '<p class="empty-state">no approaches automate its descriptions</p>') +
    "<h3>references</h3>" +
    `<ul class="references">${detail.references
      .map((ref) => `<li>${escapeHtml(ref)}</li>`)
      .join("")}</ul>` +
    "</section>"
  );
}

export function renderUnknownFactor(key: string): string {
  return (
    '<section class="error-page">' +
    `<h2>unknown factor</h2>` +
    `<p>No factor is named <strong>${escapeHtml(key)}</strong> in this corpus.</p>` +
    '<p><a href="?" class="back-link">back to the factor list</a></p>' +
    "</section>"
  );
}

// --- collections -------------------------------------------------------------------

export function renderCollection(title: string, page: CollectionPage): string {
  if (page.items.length === 0) {
    return `<div class="empty-state">No ${escapeHtml(title)} in this corpus.</div>`;
  }
  return (
    `<p class="result-count">${page.total} ${escapeHtml(title)}</p>` +
    page.items.map(renderResourceCard).join("\n")
  );
}

// --- dashboards --------------------------------------------------------------------

const STAT_CARDS: [keyof StatsPayload, string][] = [
  ["n_references", "references"],
  ["n_references_with_factor", "references with factors"],
  ["n_factors", "factors"],
  ["n_descriptions", "descriptions"],
  ["n_datasets", "datasets"],
  ["n_datasets_public", "public datasets"],
  ["n_approaches", "approaches"],
  ["n_approaches_public", "public approaches"],
  ["n_descriptions_with_evidence_or_practitioners", "descriptions with evidence or practitioners"],
  ["n_descriptions_with_impact", "descriptions with impact"],
];

export function renderStats(stats: StatsPayload): string {
  const cards = STAT_CARDS.map(
    ([field, label]) =>
      `<div class="stat-card" data-field="${field}">` +
      `<span class="stat-value">${stats[field] as number}</span>` +
      `<span class="stat-label">${label}</span></div>`,
  ).join("\n");
  const histogramRows = Object.entries(stats.description_count_histogram)
    .map(
      ([count, factors]) =>
        `<tr><td>${escapeHtml(count)}</td><td>${factors}</td></tr>`,
    )
    .join("");
  const histogram = histogramRows
    ? "<table class=\"histogram\"><thead><tr><th>descriptions per factor</th><th>factors</th></tr></thead>" +
      `<tbody>${histogramRows}</tbody></table>`
    : '<p class="empty-state">no descriptions yet</p>';
  return `<section class="stats"><div class="stat-grid">${cards}</div>${histogram}</section>`;
}

function gapFactorList(title: string, entries: { name: string; references: string[] }[]): string {
  const items = entries
    .map(
      (entry) =>
        `<li>${escapeHtml(entry.name)} <span class="muted">(${entry.references
          .map(escapeHtml)
          .join(", ")})</span></li>`,
    )
    .join("");
  return (
    `<h3>${escapeHtml(title)} <span class="count">${entries.length}</span></h3>` +
    (items ? `<ul>${items}</ul>` : '<p class="empty-state">none</p>')
  );
}

function gapDescriptionList(
  title: string,
  entries: { reference: string; object_id: string; factor: string }[],
): string {
  const items = entries
    .map(
      (entry) =>
        `<li>${escapeHtml(entry.object_id)} <span class="muted">(${escapeHtml(
          entry.reference,
        )}, factor ${escapeHtml(entry.factor)})</span></li>`,
    )
    .join("");
  return (
    `<h3>${escapeHtml(title)} <span class="count">${entries.length}</span></h3>` +
    (items ? `<ul>${items}</ul>` : '<p class="empty-state">none</p>')
  );
}

export function renderGaps(gaps: GapsPayload): string {
  const undisclosed = gaps.undisclosed_resources
    .map(
      (entry) =>
        `<li>${escapeHtml(entry.name)} <span class="muted">(${escapeHtml(entry.taxonomy)}, ${escapeHtml(
          entry.reference,
        )}, ${escapeHtml(entry.accessibility)})</span></li>`,
    )
    .join("");
  return (
    '<section class="gaps">' +
    gapFactorList("factors without an approach", gaps.factors_without_approach) +
    gapFactorList("factors without a dataset", gaps.factors_without_dataset) +
    gapDescriptionList("descriptions without evidence", gaps.descriptions_without_evidence) +
    gapDescriptionList("descriptions without an impact note", gaps.descriptions_without_impact) +
    `<h3>undisclosed resources <span class="count">${gaps.undisclosed_resources.length}</span></h3>` +
    (undisclosed ? `<ul>${undisclosed}</ul>` : '<p class="empty-state">none</p>') +
    "</section>"
  );
}

// --- authors and validation ---------------------------------------------------------

export function renderAuthors(payload: AuthorsPayload): string {
  const rows = payload.authors
    .map(
      (entry) =>
        '<tr class="author-row">' +
        `<td>${escapeHtml(entry.author)}</td>` +
        `<td>${entry.references.map(escapeHtml).join(", ")}</td>` +
        `<td>${entry.factors.map(escapeHtml).join(", ")}</td>` +
        `<td>${entry.datasets.map(escapeHtml).join(", ")}</td>` +
        `<td>${entry.approaches.map(escapeHtml).join(", ")}</td>` +
        "</tr>",
    )
    .join("\n");
  return (
    '<table class="author-table">' +
    "<thead><tr><th>author</th><th>references</th><th>factors</th><th>datasets</th><th>approaches</th></tr></thead>" +
    `<tbody>${rows}</tbody></table>`
  );
}

function findingList(title: string, findings: FindingPayload[]): string {
  if (findings.length === 0) return "";
  const items = findings
    .map(
      (finding) =>
        `<li><span class="badge badge-${escapeHtml(finding.severity)}">${escapeHtml(
          finding.severity,
        )}</span> <code>${escapeHtml(finding.code)}</code> ${escapeHtml(finding.message)}</li>`,
    )
    .join("");
  return `<h3>${escapeHtml(title)}</h3><ul class="findings">${items}</ul>`;
}

export function renderValidation(payload: ValidationPayload): string {
  const headline = payload.clean
    ? '<p class="validation-clean">corpus is clean</p>'
    : '<p class="validation-dirty">corpus has validation errors</p>';
  const counts = Object.entries(payload.counts)
    .map(([severity, count]) => `${severity}: ${count}`)
    .join(", ");
  return (
    '<section class="validation">' +
    headline +
    `<p class="muted">${escapeHtml(counts)}</p>` +
    findingList("schema", payload.findings.schema) +
    findingList("objects", payload.findings.objects) +
    findingList("links", payload.findings.links) +
    findingList("conflicts", payload.findings.conflicts) +
    findingList("lints", payload.findings.lints) +
    "</section>"
  );
}

// --- chrome -------------------------------------------------------------------------

export function renderErrorBanner(message: string): string {
  return (
    '<div class="error-banner" role="alert">' +
    `<span>${escapeHtml(message)}</span> ` +
    '<button type="button" data-action="retry">retry</button>' +
    "</div>"
  );
}

export function renderFilterSummary(filters: Filters): string {
  const active = Object.entries(filters).filter(([, value]) => value !== undefined);
  if (active.length === 0) return "";
  const parts = active.map(
    ([name, value]) => `<span class="filter-chip">${escapeHtml(name)}=${escapeHtml(String(value))}</span>`,
  );
  return `<p class="filter-summary">${parts.join(" ")}</p>`;
}
