import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { SessionController } from "../src/controller.js";
import {
  newCalls,
  payload,
  rejection,
  scriptedFetch,
  snapshot,
  traceRow,
  type ScriptedService,
} from "./helpers.js";

let root: HTMLElement;
let controller: SessionController | null = null;

beforeEach(() => {
  root = document.createElement("div");
  document.body.appendChild(root);
});

afterEach(() => {
  controller?.stop();
  controller = null;
  root.remove();
});

function makeController(service: ScriptedService): SessionController {
  controller = new SessionController(
    new ApiClient("http://svc:8000", scriptedFetch(service)),
    root,
    { pollMs: 60_000 }, // ticks are driven manually in these tests
  );
  controller.sessionId = "s0001";
  return controller;
}

function cardOrder(): string[] {
  return [...root.querySelectorAll<HTMLElement>("li[data-candidate-id]")].map(
    (el) => el.dataset.candidateId!,
  );
}

describe("SessionController", () => {
  it("renders progress with ranking disabled while evolving", async () => {
    const service: ScriptedService = {
      status: () => snapshot({ state: "evolving", completed_interactions: 2 }),
      calls: newCalls(),
    };
    await makeController(service).tick();
    expect(root.querySelector(".view-evolving")?.textContent).toContain(
      "2 of 3 interactions complete",
    );
    expect(root.querySelector(".view-ranking")).toBeNull();
    expect(root.querySelector(".submit-ranking")).toBeNull();
  });

  it("renders the sample once and never rebuilds it while polling", async () => {
    const service: ScriptedService = {
      status: () =>
        snapshot({ state: "awaiting_ranking", awaiting_interaction: 1 }),
      candidates: () => payload({}),
      calls: newCalls(),
    };
    const c = makeController(service);
    await c.tick();
    expect(root.querySelector(".view-ranking")).not.toBeNull();
    expect(root.querySelectorAll(".candidate-line")).toHaveLength(4);

    // the user arranges cards; further polls must not reset the arrangement
    const cards = root.querySelectorAll("li[data-candidate-id]");
    (cards[1]!.querySelector(".move-up") as HTMLButtonElement).click();
    const arranged = cardOrder();
    expect(arranged).toEqual(["i1c1", "i1c0", "i1c2", "i1c3"]);

    await c.tick();
    await c.tick();
    expect(cardOrder()).toEqual(arranged);
    expect(service.calls.candidates).toBe(1);
  });

  it("submits the arranged order verbatim, ids untouched", async () => {
    const submitted: string[][] = [];
    const service: ScriptedService = {
      status: () =>
        snapshot({ state: "awaiting_ranking", awaiting_interaction: 1 }),
      candidates: () => payload({}),
      submit: (order) => {
        submitted.push(order);
        return { state: "evolving", interaction: 1 };
      },
      calls: newCalls(),
    };
    const c = makeController(service);
    await c.tick();
    const cards = root.querySelectorAll("li[data-candidate-id]");
    (cards[3]!.querySelector(".move-up") as HTMLButtonElement).click();
    (root.querySelector(".submit-ranking") as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));
    expect(submitted).toEqual([["i1c0", "i1c1", "i1c3", "i1c2"]]);
    expect(root.querySelector(".view-evolving")?.textContent).toContain(
      "Ranking accepted",
    );
    void c;
  });

  it("announces deactivated objectives when the mask shrinks", async () => {
    let interaction = 1;
    const service: ScriptedService = {
      status: () =>
        snapshot({
          state: "awaiting_ranking",
          awaiting_interaction: interaction,
          active_mask: interaction === 1 ? [1, 2, 3, 4] : [1, 2],
        }),
      candidates: () =>
        interaction === 1
          ? payload({ interaction: 1, active_mask: [1, 2, 3, 4] })
          : payload({
              interaction: 2,
              active_mask: [1, 2],
              scores: { relevant: [1, 2], update_needed: false },
              candidates: [
                { id: "i2c0", values: [0.3, 0.4, 0.5, 0.6] },
                { id: "i2c1", values: [0.6, 0.1, 0.2, 0.9] },
              ],
            }),
      submit: () => ({ state: "evolving", interaction }),
      calls: newCalls(),
    };
    const c = makeController(service);
    await c.tick();
    expect(root.querySelector(".mask-notice")).toBeNull();

    (root.querySelector(".submit-ranking") as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));
    interaction = 2;
    await c.tick();

    const notice = root.querySelector(".mask-notice");
    expect(notice).not.toBeNull();
    expect(notice!.textContent).toContain("Objectives deactivated: f_3, f_4");
    expect(root.querySelector(".detected-note")?.textContent).toContain(
      "relevant: f_1, f_2",
    );
    // the plot now highlights only the two active axes
    expect(root.querySelectorAll(".axis-active")).toHaveLength(2);
    expect(root.querySelectorAll(".axis")).toHaveLength(4);
  });

  it("keeps the arrangement and shows the reason when the server rejects", async () => {
    const service: ScriptedService = {
      status: () =>
        snapshot({ state: "awaiting_ranking", awaiting_interaction: 1 }),
      candidates: () => payload({}),
      submit: () => 422,
      calls: newCalls(),
    };
    const c = makeController(service);
    await c.tick();
    const cards = root.querySelectorAll("li[data-candidate-id]");
    (cards[2]!.querySelector(".move-up") as HTMLButtonElement).click();
    const arranged = cardOrder();

    (root.querySelector(".submit-ranking") as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));

    expect(cardOrder()).toEqual(arranged);
    const error = root.querySelector(".submit-error") as HTMLElement;
    expect(error.hidden).toBe(false);
    expect(error.textContent).toContain("scripted 422");
    expect(error.textContent).toContain("arrangement is unchanged");
    expect(
      (root.querySelector(".submit-ranking") as HTMLButtonElement).disabled,
    ).toBe(false);
    void c;
  });

  it("sends a double-click as a single submission", async () => {
    const service: ScriptedService = {
      status: () =>
        snapshot({ state: "awaiting_ranking", awaiting_interaction: 1 }),
      candidates: () => payload({}),
      submit: () => ({ state: "evolving", interaction: 1 }),
      calls: newCalls(),
    };
    const c = makeController(service);
    await c.tick();
    const button = root.querySelector(".submit-ranking") as HTMLButtonElement;
    button.click();
    button.click();
    await new Promise((r) => setTimeout(r, 0));
    expect(service.calls.submit).toBe(1);
    expect(root.querySelector(".submit-error")).toBeNull();
    void c;
  });

  it("treats a 409 duplicate as already accepted without an error", async () => {
    const service: ScriptedService = {
      status: () =>
        snapshot({ state: "awaiting_ranking", awaiting_interaction: 1 }),
      candidates: () => payload({}),
      submit: () => rejection(409, "interaction already ranked"),
      calls: newCalls(),
    };
    const c = makeController(service);
    await c.tick();
    (root.querySelector(".submit-ranking") as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));
    expect(root.querySelector(".submit-error")).toBeNull();
    expect(root.querySelector(".view-evolving")?.textContent).toContain(
      "Ranking accepted",
    );
    void c;
  });

  it("refreshes when a 409 says the session stopped awaiting", async () => {
    const service: ScriptedService = {
      status: () =>
        snapshot({ state: "awaiting_ranking", awaiting_interaction: 1 }),
      candidates: () => payload({}),
      submit: () => rejection(409, "session is not awaiting a ranking"),
      calls: newCalls(),
    };
    const c = makeController(service);
    await c.tick();
    (root.querySelector(".submit-ranking") as HTMLButtonElement).click();
    await new Promise((r) => setTimeout(r, 0));
    expect(root.querySelector(".view-stale")).not.toBeNull();
    void c;
  });

  it("shows a refresh prompt when the sample goes stale mid-fetch", async () => {
    const service: ScriptedService = {
      status: () =>
        snapshot({ state: "awaiting_ranking", awaiting_interaction: 1 }),
      candidates: () => 409,
      calls: newCalls(),
    };
    await makeController(service).tick();
    expect(root.querySelector(".view-stale")?.textContent).toContain(
      "refreshing",
    );
  });

  it("renders the utility chart when the run finishes", async () => {
    const service: ScriptedService = {
      status: () => snapshot({ state: "finished" }),
      trace: () => ({
        aborted: false,
        rows: [0.2, 0.4, 0.55, 0.6].map((u, i) =>
          traceRow({ interaction: i, utility: u, active_mask: [1, 2] }),
        ),
      }),
      calls: newCalls(),
    };
    await makeController(service).tick();
    const view = root.querySelector(".view-finished")!;
    expect(view.textContent).toContain("finished");
    expect(view.querySelectorAll(".trace-point")).toHaveLength(4);
    expect(view.querySelector(".final-summary")?.textContent).toContain(
      "f_1, f_2",
    );
  });

  it("surfaces failure details", async () => {
    const service: ScriptedService = {
      status: () => snapshot({ state: "failed", error: "instance exploded" }),
      calls: newCalls(),
    };
    await makeController(service).tick();
    expect(root.querySelector(".view-ended")?.textContent).toContain(
      "instance exploded",
    );
  });

  it("keeps polling through connection problems", async () => {
    let fail = true;
    const service: ScriptedService = {
      status: () => {
        if (fail) throw new Error("ECONNREFUSED");
        return snapshot({ state: "evolving" });
      },
      calls: newCalls(),
    };
    const c = makeController(service);
    await c.tick();
    expect(root.querySelector(".view-connection-problem")).not.toBeNull();
    fail = false;
    await c.tick();
    expect(root.querySelector(".view-evolving")).not.toBeNull();
  });
});
