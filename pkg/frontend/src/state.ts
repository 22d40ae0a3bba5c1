// ViewState: which page is open, which factor is selected, and which
// filters are active — encoded into the URL query string so any view
// can be shared as a link.

export const PAGES = [
  "factors",
  "factor-detail",
  "datasets",
  "approaches",
  "stats",
  "gaps",
  "authors",
  "validation",
] as const;

export type PageName = (typeof PAGES)[number];

export interface Filters {
  scope?: string;
  aspect?: string;
  impact?: string;
  text_query?: string;
  has_approach?: boolean;
  has_dataset?: boolean;
  accessibility?: string;
  evidence?: boolean;
  practitioners?: boolean;
}

export interface ViewState {
  page: PageName;
  factorKey?: string;
  filters: Filters;
}

const STRING_FILTERS = ["scope", "aspect", "impact", "text_query", "accessibility"] as const;
const BOOL_FILTERS = ["has_approach", "has_dataset", "evidence", "practitioners"] as const;

export function defaultState(): ViewState {
  return { page: "factors", filters: {} };
}

/** Serialize a state into a query string ("" for the default view). */
export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.page !== "factors") params.set("page", state.page);
  if (state.page === "factor-detail" && state.factorKey) {
    params.set("factor", state.factorKey);
  }
  for (const name of STRING_FILTERS) {
    const value = state.filters[name];
    if (value !== undefined && value !== "") params.set(name, value);
  }
  for (const name of BOOL_FILTERS) {
    const value = state.filters[name];
    if (value !== undefined) params.set(name, String(value));
  }
  const text = params.toString();
  return text ? `?${text}` : "";
}

/** Parse a query string (with or without "?") back into a state. */
export function decodeState(search: string): ViewState {
  const params = new URLSearchParams(search.startsWith("?") ? search.slice(1) : search);
  const rawPage = params.get("page") ?? "factors";
  const page = (PAGES as readonly string[]).includes(rawPage)
    ? (rawPage as PageName)
    : "factors";
  const filters: Filters = {};
  for (const name of STRING_FILTERS) {
    const value = params.get(name);
    if (value !== null && value !== "") filters[name] = value;
  }
  for (const name of BOOL_FILTERS) {
    const value = params.get(name);
    if (value === "true") filters[name] = true;
    else if (value === "false") filters[name] = false;
  }
  const state: ViewState = { page, filters };
  const factor = params.get("factor");
  if (factor) state.factorKey = factor;
  return state;
}

/** Query parameters for GET /api/v1/factors under these filters. */
export function filterQuery(filters: Filters): URLSearchParams {
  const params = new URLSearchParams();
  for (const name of STRING_FILTERS) {
    const value = filters[name];
    if (value !== undefined && value !== "") params.set(name, value);
  }
  for (const name of BOOL_FILTERS) {
    const value = filters[name];
    if (value !== undefined) params.set(name, String(value));
  }
  return params;
}

/**
 * Last-write-wins gate for in-flight fetches: each navigation issues a
 * new ticket, and only the most recently issued ticket may render.
 * Responses for superseded tickets are dropped.
 */
export class FetchGate {
  private latest = 0;

  issue(): number {
    this.latest += 1;
    return this.latest;
  }

  accept(ticket: number): boolean {
    return ticket === this.latest;
  }
}
