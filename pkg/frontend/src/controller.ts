/** Session controller: polls the service, renders the right view for the
 * session state, and owns the one-in-flight submission rule.
 *
 * View contract (all inside the root element):
 *   - `.view-evolving`   progress while the optimizer runs, ranking disabled
 *   - `.view-ranking`    parallel-coordinates plot + drag-rank card list +
 *                        submit button; shown only in awaiting_ranking
 *   - `.mask-notice`     when objectives were deactivated since the last
 *                        sample: lists the dropped indices
 *   - `.view-finished`   trace chart once the run ends
 *   - `.view-ended`      aborted/failed message
 *   - `.submit-error`    server rejection text; the arrangement is kept
 *
 * The candidate sample is rendered once per interaction: status polls keep
 * running in the background but never rebuild the ranking view while the
 * user is arranging cards.
 */

import { ApiClient, ApiError } from "./api.js";
import { renderParallelCoords } from "./parcoords.js";
import { RankingBoard } from "./ranking.js";
import { renderTraceChart } from "./trace.js";
import type { CandidatesPayload, SessionConfig, SessionSnapshot } from "./types.js";

export interface ControllerOptions {
  pollMs?: number;
}

function objectiveList(indices: number[]): string {
  return indices.map((i) => `f_${i}`).join(", ");
}

export class SessionController {
  sessionId: string | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;
  private submitting = false;
  private shownInteraction: number | null = null;
  private lastMask: number[] | null = null;
  private board: RankingBoard | null = null;
  private readonly pollMs: number;

  constructor(
    private readonly client: ApiClient,
    private readonly root: HTMLElement,
    options: ControllerOptions = {},
  ) {
    this.pollMs = options.pollMs ?? 1000;
  }

  /** Create a session from the config and start following it. */
  async start(config: SessionConfig): Promise<string> {
    const created = await this.client.createSession(config);
    this.attach(created.id);
    return created.id;
  }

  /** Follow an existing session. */
  attach(sessionId: string): void {
    this.sessionId = sessionId;
    this.stopped = false;
    this.shownInteraction = null;
    this.lastMask = null;
    void this.tick();
  }

  stop(): void {
    this.stopped = true;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
  }

  private schedule(): void {
    if (this.stopped) return;
    this.timer = setTimeout(() => void this.tick(), this.pollMs);
  }

  async tick(): Promise<void> {
    if (this.stopped || this.sessionId === null) return;
    let snapshot: SessionSnapshot;
    try {
      snapshot = await this.client.status(this.sessionId);
    } catch (error) {
      this.renderConnectionProblem(error);
      this.schedule();
      return;
    }

    switch (snapshot.state) {
      case "evolving":
        this.shownInteraction = null;
        this.renderEvolving(snapshot);
        this.schedule();
        return;
      case "awaiting_ranking":
        if (
          this.shownInteraction === null ||
          snapshot.awaiting_interaction !== this.shownInteraction
        ) {
          await this.loadSample(snapshot);
        }
        this.schedule();
        return;
      case "finished":
      case "aborted":
        await this.renderFinished(snapshot);
        return;
      case "failed":
        this.renderEnded(
          `The run failed: ${snapshot.error ?? "unknown error"}`,
        );
        return;
    }
  }

  private async loadSample(snapshot: SessionSnapshot): Promise<void> {
    if (this.sessionId === null) return;
    let payload: CandidatesPayload;
    try {
      payload = await this.client.candidates(this.sessionId);
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // the sample moved between the status poll and the fetch
        this.renderStale();
        return;
      }
      this.renderConnectionProblem(error);
      return;
    }
    this.shownInteraction = payload.interaction;
    this.renderRanking(snapshot, payload);
  }

  // ----- views ------------------------------------------------------------

  private clear(): HTMLElement {
    this.root.textContent = "";
    return this.root;
  }

  private renderEvolving(snapshot: SessionSnapshot): void {
    const view = document.createElement("div");
    view.className = "view-evolving";
    const headline = document.createElement("p");
    headline.className = "progress";
    headline.textContent =
      `Evolving… ${snapshot.completed_interactions} of ` +
      `${snapshot.interactions} interactions complete.`;
    view.appendChild(headline);
    const mask = document.createElement("p");
    mask.className = "active-objectives";
    mask.textContent = `Active objectives: ${objectiveList(snapshot.active_mask)}`;
    view.appendChild(mask);
    this.clear().appendChild(view);
  }

  private renderStale(): void {
    const view = document.createElement("div");
    view.className = "view-stale";
    view.textContent =
      "The candidate sample changed while loading — refreshing…";
    this.clear().appendChild(view);
  }

  private renderConnectionProblem(error: unknown): void {
    const view = document.createElement("div");
    view.className = "view-connection-problem";
    view.textContent = `Cannot reach the session service (${String(
      error instanceof Error ? error.message : error,
    )}); retrying…`;
    this.clear().appendChild(view);
  }

  private renderEnded(message: string): void {
    const view = document.createElement("div");
    view.className = "view-ended";
    view.textContent = message;
    this.clear().appendChild(view);
  }

  private async renderFinished(snapshot: SessionSnapshot): Promise<void> {
    if (this.sessionId === null) return;
    const view = document.createElement("div");
    view.className = "view-finished";
    const headline = document.createElement("p");
    headline.textContent =
      snapshot.state === "aborted"
        ? "The run was aborted."
        : "The run is finished.";
    view.appendChild(headline);
    try {
      const trace = await this.client.trace(this.sessionId);
      view.appendChild(renderTraceChart(trace.rows));
      const last = trace.rows[trace.rows.length - 1];
      if (last) {
        const summary = document.createElement("p");
        summary.className = "final-summary";
        summary.textContent =
          `Final active objectives: ${objectiveList(last.active_mask)} — ` +
          `${last.evaluations} evaluations spent.`;
        view.appendChild(summary);
      }
    } catch (error) {
      const note = document.createElement("p");
      note.textContent = `Trace unavailable: ${String(
        error instanceof Error ? error.message : error,
      )}`;
      view.appendChild(note);
    }
    this.clear().appendChild(view);
  }

  private renderRanking(
    snapshot: SessionSnapshot,
    payload: CandidatesPayload,
  ): void {
    const view = document.createElement("div");
    view.className = "view-ranking";

    const headline = document.createElement("h2");
    headline.textContent =
      `Interaction ${payload.interaction} of ${snapshot.interactions}: ` +
      "rank the candidates, best first";
    view.appendChild(headline);

    if (this.lastMask !== null) {
      const newMask = new Set(payload.active_mask);
      const oldMask = new Set(this.lastMask);
      const dropped = this.lastMask.filter((i) => !newMask.has(i));
      const added = payload.active_mask.filter((i) => !oldMask.has(i));
      if (dropped.length > 0) {
        const notice = document.createElement("p");
        notice.className = "mask-notice";
        notice.textContent =
          `Objectives deactivated: ${objectiveList(dropped)} — the ` +
          "system stopped evaluating them after your last ranking.";
        view.appendChild(notice);
      }
      if (added.length > 0) {
        const notice = document.createElement("p");
        notice.className = "mask-notice mask-notice-added";
        notice.textContent = `Objectives reactivated: ${objectiveList(added)}.`;
        view.appendChild(notice);
      }
    }
    this.lastMask = [...payload.active_mask];

    if (payload.scores) {
      const belief = document.createElement("p");
      belief.className = "detected-note";
      belief.textContent =
        "Currently believed relevant: " +
        `${objectiveList(payload.scores.relevant)}.`;
      view.appendChild(belief);
    }

    const plot = document.createElement("div");
    plot.className = "plot";
    plot.appendChild(
      renderParallelCoords({
        candidates: payload.candidates,
        m: snapshot.m,
        activeMask: payload.active_mask,
      }),
    );
    view.appendChild(plot);

    this.board = new RankingBoard(payload.candidates);
    view.appendChild(this.board.element);

    const errorBox = document.createElement("p");
    errorBox.className = "submit-error";
    errorBox.hidden = true;

    const submit = document.createElement("button");
    submit.type = "button";
    submit.className = "submit-ranking";
    submit.textContent = "Submit ranking";
    submit.addEventListener("click", () => void this.submit(submit, errorBox));
    view.appendChild(submit);
    view.appendChild(errorBox);

    this.clear().appendChild(view);
  }

  private async submit(
    button: HTMLButtonElement,
    errorBox: HTMLElement,
  ): Promise<void> {
    if (this.submitting || this.board === null || this.sessionId === null) {
      return;
    }
    this.submitting = true;
    button.disabled = true;
    errorBox.hidden = true;
    const order = this.board.currentOrder();
    try {
      await this.client.submitRanking(this.sessionId, order);
      this.shownInteraction = null;
      this.board = null;
      this.renderSubmitted();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        if (/already ranked/.test(error.detail)) {
          // a duplicate of an accepted submission: move on, nothing to redo
          this.shownInteraction = null;
          this.board = null;
          this.renderSubmitted();
        } else {
          this.renderStale();
        }
      } else {
        // rejected or unreachable: keep the arrangement, offer a retry
        errorBox.textContent = `Submission failed: ${String(
          error instanceof ApiError ? error.detail : error,
        )} — your arrangement is unchanged; adjust if needed and retry.`;
        errorBox.hidden = false;
        button.disabled = false;
      }
    } finally {
      this.submitting = false;
    }
  }

  private renderSubmitted(): void {
    const view = document.createElement("div");
    view.className = "view-evolving";
    view.textContent = "Ranking accepted — evolving…";
    this.clear().appendChild(view);
  }
}
