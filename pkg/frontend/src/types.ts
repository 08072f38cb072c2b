/** Payload shapes of the session-service JSON API. */

export type SessionState =
  | "evolving"
  | "awaiting_ranking"
  | "finished"
  | "aborted"
  | "failed";

export interface SessionConfig {
  problem: { kind: string; m: number; [key: string]: unknown };
  uf?: Record<string, unknown>;
  learning?: boolean;
  detection?: Record<string, unknown>;
  initial_mask?: number[];
  population?: number;
  n_exa?: number;
  interactions?: number;
  gen_first?: number;
  gen_interaction?: number;
  total_generations?: number;
  seed?: number;
}

export interface SessionSnapshot {
  id: string;
  state: SessionState;
  m: number;
  n_exa: number;
  interactions: number;
  completed_interactions: number;
  awaiting_interaction: number | null;
  active_mask: number[];
  last_detection: { relevant: number[]; update_needed: boolean } | null;
  error: string | null;
}

export interface Candidate {
  id: string;
  values: number[];
}

export interface CandidatesPayload {
  interaction: number;
  active_mask: number[];
  scores: { relevant: number[]; update_needed: boolean } | null;
  candidates: Candidate[];
}

export interface TraceRow {
  interaction: number;
  utility: number | null;
  best_cost: number | null;
  active_mask: number[];
  n_active: number;
  n_active_relevant: number;
  detected: number[] | null;
  update_needed: boolean;
  evaluations: number;
}

export interface TracePayload {
  aborted: boolean;
  rows: TraceRow[];
}
