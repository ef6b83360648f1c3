/**
 * Fixture transport: replays recorded engine responses keyed by endpoint
 * and request body, standing in for a live server in the contract tests.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import type { Transport } from "../src/api";

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export const recordedRequests = loadFixture<{
  run: Record<string, unknown>;
  run_toggled: Record<string, unknown>;
  sensitivity: Record<string, unknown>;
}>("requests.json");

export class FixtureTransport implements Transport {
  public requests: { path: string; body?: unknown }[] = [];

  async get(path: string): Promise<unknown> {
    this.requests.push({ path });
    if (path === "/api/model") return loadFixture("model.json");
    throw new Error(`no fixture for GET ${path}`);
  }

  async post(path: string, body: unknown): Promise<unknown> {
    this.requests.push({ path, body });
    if (path === "/api/run") {
      const request = body as { overrides: Record<string, unknown>; samples: number; seed: number };
      for (const [name, recorded] of [
        ["run.json", recordedRequests.run],
        ["run_toggled.json", recordedRequests.run_toggled],
      ] as const) {
        const want = recorded as { overrides: Record<string, unknown>; samples: number; seed: number };
        if (
          JSON.stringify(request.overrides) === JSON.stringify(want.overrides) &&
          request.samples === want.samples &&
          request.seed === want.seed
        ) {
          return loadFixture(name);
        }
      }
      throw new Error(`no recorded run fixture matches ${JSON.stringify(body)}`);
    }
    if (path === "/api/sensitivity") return loadFixture("sensitivity.json");
    throw new Error(`no fixture for POST ${path}`);
  }
}
