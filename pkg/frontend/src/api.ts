/**
 * Thin typed client for the engine API. A Transport is injectable so tests
 * can replay recorded responses instead of talking to a live server.
 */

import type {
  ModelStructure,
  RunRequestBody,
  RunResponse,
  SensitivityResponse,
} from "./types";

export interface Transport {
  get(path: string): Promise<unknown>;
  post(path: string, body: unknown): Promise<unknown>;
}

export class HttpTransport implements Transport {
  constructor(private baseUrl: string = "") {}

  async get(path: string): Promise<unknown> {
    const resp = await fetch(this.baseUrl + path);
    if (!resp.ok) throw new ApiError(resp.status, await errorMessage(resp));
    return resp.json();
  }

  async post(path: string, body: unknown): Promise<unknown> {
    const resp = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) throw new ApiError(resp.status, await errorMessage(resp));
    return resp.json();
  }
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function errorMessage(resp: Response): Promise<string> {
  try {
    const body = (await resp.json()) as { message?: string; detail?: unknown };
    if (body.message) return body.message;
    if (body.detail) return JSON.stringify(body.detail);
  } catch {
    /* non-JSON error body */
  }
  return `HTTP ${resp.status}`;
}

export class ApiClient {
  constructor(private transport: Transport) {}

  fetchModel(): Promise<ModelStructure> {
    return this.transport.get("/api/model") as Promise<ModelStructure>;
  }

  run(body: RunRequestBody): Promise<RunResponse> {
    return this.transport.post("/api/run", body) as Promise<RunResponse>;
  }

  sensitivity(target: string, samples: number, seed: number, overrides: Record<string, unknown>, preset: string | null): Promise<SensitivityResponse> {
    return this.transport.post("/api/sensitivity", {
      target,
      samples,
      seed,
      overrides,
      preset,
    }) as Promise<SensitivityResponse>;
  }
}
