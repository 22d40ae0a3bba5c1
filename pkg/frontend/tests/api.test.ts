// Client behaviour against recorded responses: URL construction, JSON
// decoding, and error mapping all run without a live service.

import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { defaultState } from "../src/state.js";
import type { ErrorBody, FactorsPage, SchemaPayload } from "../src/types.js";
import { fixture } from "./fixture.js";

function recorded(body: unknown, status = 200): ApiClient & { urls: string[] } {
  const urls: string[] = [];
  const client = new ApiClient("", async (url) => {
    urls.push(url);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  });
  return Object.assign(client, { urls });
}

describe("request URLs", () => {
  it("prefixes every path with the API namespace", async () => {
    const client = recorded(fixture<SchemaPayload>("schema.json"));
    await client.schema();
    expect(client.urls).toEqual(["/api/v1/schema"]);
  });

  it("prepends the configured base URL", async () => {
    const urls: string[] = [];
    const client = new ApiClient("http://tool-host:8000", async (url) => {
      urls.push(url);
      return new Response(JSON.stringify(fixture("stats.json")), { status: 200 });
    });
    await client.stats();
    expect(urls).toEqual(["http://tool-host:8000/api/v1/stats"]);
  });

  it("serializes active filters as query parameters", async () => {
    const client = recorded(fixture<FactorsPage>("factors.json"));
    const filters = { ...defaultState().filters, scope: "use case", has_approach: true };
    await client.factors(filters);
    expect(client.urls).toEqual(["/api/v1/factors?scope=use+case&has_approach=true"]);
  });

  it("omits the query string when no filters are active", async () => {
    const client = recorded(fixture<FactorsPage>("factors.json"));
    await client.factors(defaultState().filters);
    expect(client.urls).toEqual(["/api/v1/factors"]);
  });

  it("escapes factor keys in the path", async () => {
    const client = recorded(fixture("factor_detail_containing_subflows.json"));
    await client.factor("weird/key value");
    expect(client.urls).toEqual(["/api/v1/factors/weird%2Fkey%20value"]);
  });
});

describe("response decoding", () => {
  it("returns the parsed factors page", async () => {
    const payload = fixture<FactorsPage>("factors.json");
    const page = await recorded(payload).factors(defaultState().filters);
    expect(page.total).toBe(1);
    expect(page.items[0]!.key).toBe("containing-subflows");
  });

  it("maps a recorded 404 to an ApiError carrying the body code", async () => {
    const body = fixture<ErrorBody>("factor_unknown_404.json");
    const attempt = recorded(body, 404).factor("unknown-factor");
    await expect(attempt).rejects.toMatchObject({
      name: "ApiError",
      status: 404,
      code: "unknown_factor",
      message: "no factor named 'unknown-factor'",
    });
  });

  it("maps a recorded 400 to an ApiError carrying the body code", async () => {
    const body = fixture<ErrorBody>("factors_scope_galaxy_400.json");
    const attempt = recorded(body, 400).factors({
      ...defaultState().filters,
      scope: "galaxy",
    });
    await expect(attempt).rejects.toMatchObject({
      status: 400,
      code: "unknown_characteristic",
    });
  });

  it("falls back to a generic error when the body is not JSON", async () => {
    const client = new ApiClient(
      "",
      async () => new Response("<html>bad gateway</html>", { status: 502 }),
    );
    const attempt = client.stats();
    await expect(attempt).rejects.toMatchObject({
      status: 502,
      code: "error",
      message: "request failed with status 502",
    });
    await expect(client.stats()).rejects.toBeInstanceOf(ApiError);
  });
});
