// Thin typed client for the /api/v1 endpoints.  The fetch function is
// injectable so tests can run against recorded responses.

import type {
  AuthorsPayload,
  CollectionPage,
  ErrorBody,
  FactorDetail,
  FactorsPage,
  GapsPayload,
  SchemaPayload,
  StatsPayload,
  ValidationPayload,
} from "./types.js";
import type { Filters } from "./state.js";
import { filterQuery } from "./state.js";

export const API_PREFIX = "/api/v1";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (url: string) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string, params?: URLSearchParams): Promise<T> {
    const text = params?.toString() ?? "";
    const url = `${this.baseUrl}${API_PREFIX}${path}${text ? `?${text}` : ""}`;
    const response = await this.fetchImpl(url);
    if (!response.ok) {
      let body: Partial<ErrorBody> = {};
      try {
        body = (await response.json()) as Partial<ErrorBody>;
      } catch {
        // non-JSON error body: keep the status alone
      }
      throw new ApiError(
        response.status,
        body.code ?? "error",
        body.message ?? `request failed with status ${response.status}`,
      );
    }
    return (await response.json()) as T;
  }

  schema(): Promise<SchemaPayload> {
    return this.get("/schema");
  }

  factors(filters: Filters): Promise<FactorsPage> {
    return this.get("/factors", filterQuery(filters));
  }

  factor(key: string): Promise<FactorDetail> {
    return this.get(`/factors/${encodeURIComponent(key)}`);
  }

  collection(name: "descriptions" | "datasets" | "approaches"): Promise<CollectionPage> {
    return this.get(`/${name}`);
  }

  stats(): Promise<StatsPayload> {
    return this.get("/stats");
  }

  gaps(): Promise<GapsPayload> {
    return this.get("/gaps");
  }

  authors(): Promise<AuthorsPayload> {
    return this.get("/authors");
  }

  validation(): Promise<ValidationPayload> {
    return this.get("/validation");
  }
}
