/**
 * End-to-end smoke against a real engine process: load the shipped model,
 * toggle one crux, run with seed 7, and check the probability the view
 * would display equals a direct POST to the same endpoint with the same
 * body.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, HttpTransport } from "../src/api";
import {
  buildRunRequest,
  initialState,
  outputRows,
  setOverride,
  withStructure,
} from "../src/state";

const PORT = 8733;
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess | null = null;

async function waitForHealth(): Promise<void> {
  for (let attempt = 0; attempt < 120; attempt++) {
    try {
      const resp = await fetch(`${BASE}/api/health`);
      if (resp.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 500));
  }
  throw new Error("engine API did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "mtair.cli", "serve", "src/mtair/data/mtair_model.mtair.json", "--port", String(PORT)],
    { cwd: "..", stdio: "ignore" }
  );
  await waitForHealth();
});

afterAll(() => {
  server?.kill("SIGTERM");
});

describe("end-to-end smoke", () => {
  it("displayed probability equals a direct API call with the same body", async () => {
    const client = new ApiClient(new HttpTransport(BASE));
    let state = withStructure(initialState(), await client.fetchModel());
    expect(state.structure!.nodes.length).toBeGreaterThan(200);

    state = setOverride(state, "outcomes.governance_prevents", true);
    state = { ...state, seed: 7, samples: 2_000 };
    const body = buildRunRequest(state, ["outcomes.catastrophically_misaligned"]);
    const response = await client.run(body);
    const displayed = outputRows(response).find(
      (r) => r.node === "outcomes.catastrophically_misaligned"
    )!;

    const direct = await fetch(`${BASE}/api/run`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    const directBody = (await direct.json()) as typeof response;
    const expected = directBody.outputs.find(
      (o) => o.node === "outcomes.catastrophically_misaligned"
    )!;

    expect(displayed.probability!.value).toBe(expected.probability_true);
    expect(displayed.probability!.full).toBe(String(expected.probability_true));
    expect(response.config.overrides["outcomes.governance_prevents"]).toBe(true);
  });
});
