import { describe, expect, it } from "vitest";

import {
  FetchGate,
  decodeState,
  defaultState,
  encodeState,
  filterQuery,
  type ViewState,
} from "../src/state.js";

describe("view state in the URL", () => {
  it("encodes the default view as an empty string", () => {
    expect(encodeState(defaultState())).toBe("");
  });

  it("round-trips every field through the query string", () => {
    const state: ViewState = {
      page: "factor-detail",
      factorKey: "containing-subflows",
      filters: {
        scope: "use case",
        aspect: "understandability",
        impact: "impacted negatively",
        text_query: "subflow",
        has_approach: true,
        has_dataset: false,
        accessibility: "open access link",
        evidence: true,
        practitioners: false,
      },
    };
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it("keeps query links shareable (plain URLSearchParams encoding)", () => {
    const encoded = encodeState({
      page: "factors",
      filters: { scope: "use case" },
    });
    expect(encoded).toBe("?scope=use+case");
    expect(decodeState("?scope=use+case").filters.scope).toBe("use case");
  });

  it("falls back to the factor list for unknown pages", () => {
    expect(decodeState("?page=wibble").page).toBe("factors");
  });

  it("ignores empty and malformed boolean parameters", () => {
    const state = decodeState("?scope=&has_approach=maybe");
    expect(state.filters.scope).toBeUndefined();
    expect(state.filters.has_approach).toBeUndefined();
  });

  it("maps filters onto the API's query parameter names", () => {
    const params = filterQuery({
      scope: "word",
      has_approach: true,
      text_query: "vague",
    });
    expect(params.get("scope")).toBe("word");
    expect(params.get("has_approach")).toBe("true");
    expect(params.get("text_query")).toBe("vague");
    expect(params.get("aspect")).toBeNull();
  });
});

describe("last-write-wins fetch gate", () => {
  it("accepts only the most recently issued ticket", () => {
    const gate = new FetchGate();
    const first = gate.issue();
    const second = gate.issue();
    expect(gate.accept(first)).toBe(false);
    expect(gate.accept(second)).toBe(true);
    // accept() does not consume: the latest response may render repeatedly
    expect(gate.accept(second)).toBe(true);
    const third = gate.issue();
    expect(gate.accept(second)).toBe(false);
    expect(gate.accept(third)).toBe(true);
  });

  it("drops an out-of-order completion of an older fetch", () => {
    const gate = new FetchGate();
    const slow = gate.issue();
    const fast = gate.issue();
    // the newer request resolves first and renders
    expect(gate.accept(fast)).toBe(true);
    // the older one resolves afterwards and must not overwrite it
    expect(gate.accept(slow)).toBe(false);
  });
});
