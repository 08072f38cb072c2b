/** Typed client for the session-service HTTP API. */

import type {
  CandidatesPayload,
  SessionConfig,
  SessionSnapshot,
  TracePayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function parseDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
    return JSON.stringify(body.detail ?? body);
  } catch {
    return response.statusText || "request failed";
  }
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      throw new ApiError(response.status, await parseDetail(response));
    }
    return (await response.json()) as T;
  }

  createSession(config: SessionConfig): Promise<{ id: string; state: string }> {
    return this.request("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(config),
    });
  }

  status(id: string): Promise<SessionSnapshot> {
    return this.request(`/sessions/${id}`);
  }

  candidates(id: string): Promise<CandidatesPayload> {
    return this.request(`/sessions/${id}/candidates`);
  }

  /** Submit the ranking as candidate ids ordered best first. */
  submitRanking(
    id: string,
    order: string[],
  ): Promise<{ state: string; interaction: number }> {
    return this.request(`/sessions/${id}/ranking`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ order }),
    });
  }

  trace(id: string): Promise<TracePayload> {
    return this.request(`/sessions/${id}/trace`);
  }

  abort(id: string): Promise<{ id: string; state: string }> {
    return this.request(`/sessions/${id}`, { method: "DELETE" });
  }
}
