// Browser entry point: wires state, API client, and renderers into the
// page.  One event loop; stale responses are dropped by the FetchGate
// (last write wins).

import { ApiClient, ApiError } from "./api.js";
import {
  accessibilityOptions,
  aspectOptions,
  impactOptions,
  scopeOptions,
} from "./filters.js";
import {
  escapeHtml,
  renderAuthors,
  renderCollection,
  renderErrorBanner,
  renderFactorDetail,
  renderFactorTable,
  renderFilterSummary,
  renderGaps,
  renderStats,
  renderUnknownFactor,
  renderValidation,
} from "./render.js";
import {
  FetchGate,
  PAGES,
  decodeState,
  defaultState,
  encodeState,
  type Filters,
  type PageName,
  type ViewState,
} from "./state.js";
import type { SchemaPayload } from "./types.js";

function apiBase(): string {
  const meta = document.querySelector('meta[name="api-base"]');
  return meta?.getAttribute("content") ?? "";
}

const client = new ApiClient(apiBase());
const gate = new FetchGate();
let current: ViewState = defaultState();
let schema: SchemaPayload | null = null;

const content = () => document.getElementById("content")!;
const filterBar = () => document.getElementById("filters")!;
const nav = () => document.getElementById("nav")!;

function option(value: string, selected: string | undefined): string {
  const mark = value === selected ? " selected" : "";
  return `<option value="${value}"${mark}>${value}</option>`;
}

function select(name: string, values: string[], active: string | undefined, label: string): string {
  return (
    `<label>${label} <select name="${name}">` +
    `<option value="">any</option>` +
    values.map((value) => option(value, active)).join("") +
    "</select></label>"
  );
}

function triState(name: string, active: boolean | undefined, label: string): string {
  const value = active === undefined ? "" : String(active);
  return (
    `<label>${label} <select name="${name}">` +
    `<option value=""${value === "" ? " selected" : ""}>any</option>` +
    `<option value="true"${value === "true" ? " selected" : ""}>yes</option>` +
    `<option value="false"${value === "false" ? " selected" : ""}>no</option>` +
    "</select></label>"
  );
}

function renderFilterControls(): void {
  if (!schema || current.page !== "factors") {
    filterBar().innerHTML = "";
    return;
  }
  const f = current.filters;
  filterBar().innerHTML = [
    select("scope", scopeOptions(schema), f.scope, "scope"),
    select("aspect", aspectOptions(schema), f.aspect, "aspect"),
    select("impact", impactOptions(schema), f.impact, "impact"),
    select("accessibility", accessibilityOptions(schema), f.accessibility, "accessibility"),
    triState("has_approach", f.has_approach, "has approach"),
    triState("has_dataset", f.has_dataset, "has dataset"),
    triState("evidence", f.evidence, "evidence"),
    triState("practitioners", f.practitioners, "practitioners"),
    `<label>text <input type="search" name="text_query" value="${escapeHtml(f.text_query ?? "")}"></label>`,
  ].join("\n");
}

function renderNav(): void {
  const tabs: PageName[] = PAGES.filter((page) => page !== "factor-detail");
  nav().innerHTML = tabs
    .map((page) => {
      const cls = page === current.page ? ' class="active"' : "";
      const href = encodeState({ page, filters: current.filters }) || "?";
      return `<a${cls} href="${href}" data-page="${page}">${page}</a>`;
    })
    .join("\n");
}

async function loadPage(state: ViewState): Promise<string> {
  switch (state.page) {
    case "factors": {
      const page = await client.factors(state.filters);
      return renderFilterSummary(state.filters) + renderFactorTable(page);
    }
    case "factor-detail": {
      try {
        const detail = await client.factor(state.factorKey ?? "");
        return renderFactorDetail(detail);
      } catch (error) {
        if (error instanceof ApiError && error.status === 404) {
          return renderUnknownFactor(state.factorKey ?? "");
        }
        throw error;
      }
    }
    case "datasets":
      return renderCollection("datasets", await client.collection("datasets"));
    case "approaches":
      return renderCollection("approaches", await client.collection("approaches"));
    case "stats":
      return renderStats(await client.stats());
    case "gaps":
      return renderGaps(await client.gaps());
    case "authors":
      return renderAuthors(await client.authors());
    case "validation":
      return renderValidation(await client.validation());
  }
}

async function show(state: ViewState, push: boolean): Promise<void> {
  current = state;
  if (push) {
    history.pushState(null, "", encodeState(state) || location.pathname);
  }
  renderNav();
  renderFilterControls();
  const ticket = gate.issue();
  try {
    const html = await loadPage(state);
    if (gate.accept(ticket)) content().innerHTML = html;
  } catch (error) {
    if (!gate.accept(ticket)) return;
    const message =
      error instanceof ApiError
        ? `the API answered ${error.status}: ${error.message}`
        : "the API is unreachable";
    content().innerHTML = renderErrorBanner(message);
  }
}

function onFilterChange(): void {
  const filters: Filters = { ...current.filters };
  filterBar()
    .querySelectorAll<HTMLSelectElement | HTMLInputElement>("select, input")
    .forEach((control) => {
      const name = control.name as keyof Filters;
      const value = control.value;
      if (value === "") {
        delete filters[name];
      } else if (value === "true" || value === "false") {
        (filters as Record<string, unknown>)[name] = value === "true";
      } else {
        (filters as Record<string, unknown>)[name] = value;
      }
    });
  void show({ ...current, filters }, true);
}

function onClick(event: MouseEvent): void {
  const target = event.target as HTMLElement;
  if (target.matches("[data-action=retry]")) {
    void show(current, false);
    return;
  }
  const anchor = target.closest("a[href^='?']");
  if (anchor) {
    event.preventDefault();
    void show(decodeState(anchor.getAttribute("href") ?? ""), true);
  }
}

async function main(): Promise<void> {
  document.body.addEventListener("click", onClick);
  filterBar().addEventListener("change", onFilterChange);
  filterBar().addEventListener("search", onFilterChange);
  window.addEventListener("popstate", () => {
    void show(decodeState(location.search), false);
  });
  try {
    schema = await client.schema();
  } catch {
    content().innerHTML = renderErrorBanner("could not load the schema");
    return;
  }
  await show(decodeState(location.search), false);
}

void main();
