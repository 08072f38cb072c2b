/** Shared builders for frontend tests. */

import type {
  Candidate,
  CandidatesPayload,
  SessionSnapshot,
  TraceRow,
} from "../src/types.js";

export function fakeResponse(body: unknown, status = 200): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    statusText: `status ${status}`,
    json: async () => body,
  } as unknown as Response;
}

export function snapshot(partial: Partial<SessionSnapshot>): SessionSnapshot {
  return {
    id: "s0001",
    state: "evolving",
    m: 4,
    n_exa: 4,
    interactions: 3,
    completed_interactions: 0,
    awaiting_interaction: null,
    active_mask: [1, 2, 3, 4],
    last_detection: null,
    error: null,
    ...partial,
  };
}

export function candidate(id: string, values: number[]): Candidate {
  return { id, values };
}

export function payload(
  partial: Partial<CandidatesPayload>,
): CandidatesPayload {
  return {
    interaction: 1,
    active_mask: [1, 2, 3, 4],
    scores: null,
    candidates: [
      candidate("i1c0", [0.1, 0.9, 0.5, 0.5]),
      candidate("i1c1", [0.4, 0.3, 0.6, 0.2]),
      candidate("i1c2", [0.8, 0.2, 0.1, 0.7]),
      candidate("i1c3", [0.5, 0.5, 0.9, 0.1]),
    ],
    ...partial,
  };
}

export function traceRow(partial: Partial<TraceRow>): TraceRow {
  return {
    interaction: 0,
    utility: 0.2,
    best_cost: 0.4,
    active_mask: [1, 2, 3, 4],
    n_active: 4,
    n_active_relevant: 2,
    detected: null,
    update_needed: false,
    evaluations: 500,
    ...partial,
  };
}

export interface ScriptedService {
  status: () => unknown | number;
  candidates?: () => unknown | number;
  submit?: (order: string[]) => unknown | number;
  trace?: () => unknown | number;
  calls: { status: number; candidates: number; submit: number; trace: number };
}

/** An error result with a custom server detail. */
export function rejection(status: number, detail: string): unknown {
  return { __status: status, detail };
}

/** A fetch stub routing the session-service paths to scripted handlers. */
export function scriptedFetch(service: ScriptedService): typeof fetch {
  const respond = (result: unknown | number): Response => {
    if (typeof result === "number") {
      return fakeResponse({ detail: `scripted ${result}` }, result);
    }
    const custom = result as { __status?: number; detail?: string };
    if (typeof custom.__status === "number") {
      return fakeResponse({ detail: custom.detail }, custom.__status);
    }
    return fakeResponse(result);
  };

  return async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    if (url.endsWith("/candidates")) {
      service.calls.candidates += 1;
      if (!service.candidates) throw new Error("no candidates handler");
      return respond(service.candidates());
    }
    if (url.endsWith("/ranking")) {
      service.calls.submit += 1;
      if (!service.submit) throw new Error("no submit handler");
      const body = JSON.parse(String(init?.body)) as { order: string[] };
      return respond(service.submit(body.order));
    }
    if (url.endsWith("/trace")) {
      service.calls.trace += 1;
      if (!service.trace) throw new Error("no trace handler");
      return respond(service.trace());
    }
    service.calls.status += 1;
    return respond(service.status());
  };
}

export function newCalls(): ScriptedService["calls"] {
  return { status: 0, candidates: 0, submit: 0, trace: 0 };
}
