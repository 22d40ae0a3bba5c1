// The filter vocabularies must come from the fetched schema, never
// from constants in the client.

import { describe, expect, it } from "vitest";

import {
  accessibilityOptions,
  aspectOptions,
  dimensionCharacteristics,
  impactOptions,
  scopeOptions,
} from "../src/filters.js";
import type { SchemaPayload } from "../src/types.js";
import { fixture } from "./fixture.js";

const schema = fixture<SchemaPayload>("schema.json");

describe("schema-driven filter options", () => {
  it("offers exactly the declared scope characteristics", () => {
    expect(scopeOptions(schema)).toEqual([
      "word",
      "phrase",
      "sentence",
      "paragraph",
      "section",
      "use case",
      "document",
    ]);
  });

  it("derives aspect names from the expanded cluster members", () => {
    expect(aspectOptions(schema)).toEqual([
      "ambiguity",
      "completeness",
      "complexity",
      "consistency",
      "correctness",
      "maintainability",
      "understandability",
      "verifiability",
    ]);
  });

  it("derives impact values from the cluster characteristics", () => {
    expect(impactOptions(schema)).toEqual([
      "impacted positively",
      "impacted negatively",
      "not impacted",
    ]);
  });

  it("unions accessibility values across dataset and approach taxonomies", () => {
    const options = accessibilityOptions(schema);
    expect(options).toEqual([...options].sort());
    expect(options).toContain("private"); // dataset-only value
    expect(options).toContain("open source"); // approach-only value
    expect(options).toContain("not disclosed"); // shared value, present once
    expect(options.filter((v) => v === "not disclosed")).toHaveLength(1);
  });

  it("reflects schema edits without code changes", () => {
    const copy: SchemaPayload = JSON.parse(JSON.stringify(schema));
    const factor = copy.taxonomies.find((tax) => tax.name === "factor")!;
    factor.expanded_dimensions.find((dim) => dim.name === "scope")!.characteristics.push(
      "glossary entry",
    );
    expect(scopeOptions(copy)).toContain("glossary entry");
  });

  it("returns empty lists for unknown taxonomies or dimensions", () => {
    expect(dimensionCharacteristics(schema, "nope", "scope")).toEqual([]);
    expect(dimensionCharacteristics(schema, "factor", "nope")).toEqual([]);
  });
});
