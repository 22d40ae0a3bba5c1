// Payload shapes of the /api/v1 endpoints, mirrored field-for-field.

export interface ExpandedDimension {
  name: string;
  characteristics: string[];
  default: string | null;
  required: boolean;
}

export interface RelationDecl {
  name: string;
  target: string;
  min: number;
  max: number | null | "unbounded";
}

export interface TaxonomyDecl {
  name: string;
  dimensions: unknown[];
  dimension_clusters: unknown[];
  scope_notes: { name: string; required?: boolean }[];
  relations: RelationDecl[];
  expanded_dimensions: ExpandedDimension[];
}

export interface SchemaPayload {
  version: number;
  taxonomies: TaxonomyDecl[];
  public_accessibility?: Record<string, string[]>;
}

export interface FactorSummary {
  key: string;
  name: string;
  implicit: boolean;
  aliases: string[];
  values: Record<string, string | { conflict: string[] }>;
  n_descriptions: number;
  n_datasets: number;
  n_approaches: number;
  references: string[];
}

export interface FactorsPage {
  total: number;
  limit: number;
  offset: number;
  items: FactorSummary[];
}

export interface ObjectPayload {
  reference: string;
  id: string;
  taxonomy: string;
  values: Record<string, string>;
  notes: Record<string, string>;
  relations: Record<string, string[]>;
}

export interface FactorDetail extends FactorSummary {
  assertions: { reference: string; object_id: string }[];
  descriptions: ObjectPayload[];
  datasets: ObjectPayload[];
  approaches: ObjectPayload[];
}

export interface CollectionPage {
  total: number;
  limit: number;
  offset: number;
  items: ObjectPayload[];
}

export interface StatsPayload {
  n_references: number;
  n_references_with_factor: number;
  n_factors: number;
  n_descriptions: number;
  n_datasets: number;
  n_approaches: number;
  n_datasets_public: number;
  n_approaches_public: number;
  n_descriptions_with_evidence_or_practitioners: number;
  n_descriptions_with_impact: number;
  description_count_histogram: Record<string, number>;
}

export interface FactorGapEntry {
  key: string;
  name: string;
  references: string[];
}

export interface DescriptionGapEntry {
  reference: string;
  object_id: string;
  factor: string;
}

export interface ResourceGapEntry {
  taxonomy: string;
  reference: string;
  object_id: string;
  name: string;
  accessibility: string;
}

export interface GapsPayload {
  factors_without_approach: FactorGapEntry[];
  factors_without_dataset: FactorGapEntry[];
  descriptions_without_evidence: DescriptionGapEntry[];
  descriptions_without_impact: DescriptionGapEntry[];
  undisclosed_resources: ResourceGapEntry[];
}

export interface AuthorEntry {
  author: string;
  references: string[];
  factors: string[];
  datasets: string[];
  approaches: string[];
}

export interface AuthorsPayload {
  authors: AuthorEntry[];
}

export interface FindingPayload {
  code: string;
  severity: string;
  message: string;
  path?: string | null;
  [extra: string]: unknown;
}

export interface ValidationPayload {
  clean: boolean;
  counts: Record<string, number>;
  findings: {
    schema: FindingPayload[];
    objects: FindingPayload[];
    links: FindingPayload[];
    conflicts: FindingPayload[];
    lints: FindingPayload[];
  };
}

export interface ErrorBody {
  code: string;
  message: string;
}
