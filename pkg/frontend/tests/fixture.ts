import { readFileSync } from "node:fs";
import path from "node:path";
import { fileURLToPath } from "node:url";

const here = path.dirname(fileURLToPath(import.meta.url));

/** Load one recorded API response from tests/fixtures/. */
export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(path.join(here, "fixtures", name), "utf-8")) as T;
}
