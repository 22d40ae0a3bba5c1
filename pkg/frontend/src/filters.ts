// Filter vocabularies, read from the fetched schema.  Nothing here is
// hard-coded: a characteristic added to structure.json shows up in the
// controls with no code change.

import type { SchemaPayload, TaxonomyDecl } from "./types.js";

const ASPECT_PREFIX = "aspect.";

function taxonomy(schema: SchemaPayload, name: string): TaxonomyDecl | undefined {
  return schema.taxonomies.find((tax) => tax.name === name);
}

/** Characteristics of one expanded dimension, [] when absent. */
export function dimensionCharacteristics(
  schema: SchemaPayload,
  taxonomyName: string,
  dimensionName: string,
): string[] {
  const tax = taxonomy(schema, taxonomyName);
  const dim = tax?.expanded_dimensions.find((d) => d.name === dimensionName);
  return dim ? [...dim.characteristics] : [];
}

/** Allowed values of the factor scope filter. */
export function scopeOptions(schema: SchemaPayload): string[] {
  return dimensionCharacteristics(schema, "factor", "scope");
}

/** Quality-aspect names (cluster members, prefix stripped, declared order). */
export function aspectOptions(schema: SchemaPayload): string[] {
  const tax = taxonomy(schema, "factor");
  if (!tax) return [];
  return tax.expanded_dimensions
    .filter((dim) => dim.name.startsWith(ASPECT_PREFIX))
    .map((dim) => dim.name.slice(ASPECT_PREFIX.length));
}

/** Allowed values for the impact half of an aspect filter. */
export function impactOptions(schema: SchemaPayload): string[] {
  const tax = taxonomy(schema, "factor");
  const first = tax?.expanded_dimensions.find((dim) => dim.name.startsWith(ASPECT_PREFIX));
  return first ? [...first.characteristics] : [];
}

/** Union of accessibility vocabularies across resource taxonomies, sorted. */
export function accessibilityOptions(schema: SchemaPayload): string[] {
  const seen = new Set<string>();
  for (const taxonomyName of ["dataset", "approach"]) {
    for (const value of dimensionCharacteristics(schema, taxonomyName, "accessibility")) {
      seen.add(value);
    }
  }
  return [...seen].sort();
}
