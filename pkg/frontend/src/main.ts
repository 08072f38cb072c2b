/** Page bootstrap: a small form to start or join a session, and the
 * controller-driven session view underneath.
 */

import { ApiClient } from "./api.js";
import { SessionController } from "./controller.js";
import type { SessionConfig } from "./types.js";

const DEMO_CONFIG: SessionConfig = {
  problem: { kind: "rmnk", m: 4, n: 16 },
  uf: {
    kind: "tchebychef",
    relevant: [1, 2],
    relevant_weights: [0.55, 0.45],
  },
  learning: true,
  detection: { method: "univariate", reduction: true, tau: 0.5 },
  population: 40,
  n_exa: 5,
  interactions: 5,
  gen_first: 40,
  gen_interaction: 10,
  total_generations: 100,
  seed: 1,
};

export function mount(page: HTMLElement): void {
  page.innerHTML = `
    <header>
      <h1>dm-console</h1>
      <p class="tagline">Rank candidate solutions; the optimizer learns what
      you care about and stops evaluating what you don't.</p>
    </header>
    <form class="session-form">
      <label>Service
        <input name="base" value="${location.origin.startsWith("http") ? location.origin : "http://127.0.0.1:8000"}">
      </label>
      <label>Run configuration
        <textarea name="config" rows="12" spellcheck="false"></textarea>
      </label>
      <div class="form-actions">
        <button type="submit">Start session</button>
        <label class="join">or join <input name="session" placeholder="session id"></label>
      </div>
      <p class="form-error" hidden></p>
    </form>
    <main class="session-root"></main>
  `;

  const form = page.querySelector(".session-form") as HTMLFormElement;
  const configField = form.elements.namedItem("config") as HTMLTextAreaElement;
  configField.value = JSON.stringify(DEMO_CONFIG, null, 2);
  const errorBox = form.querySelector(".form-error") as HTMLElement;
  const root = page.querySelector(".session-root") as HTMLElement;

  let controller: SessionController | null = null;

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    errorBox.hidden = true;
    const base = (form.elements.namedItem("base") as HTMLInputElement).value
      .trim()
      .replace(/\/$/, "");
    const join = (form.elements.namedItem("session") as HTMLInputElement).value
      .trim();
    controller?.stop();
    controller = new SessionController(new ApiClient(base), root);
    void (async () => {
      try {
        if (join) {
          controller!.attach(join);
        } else {
          await controller!.start(
            JSON.parse(configField.value) as SessionConfig,
          );
        }
      } catch (error) {
        errorBox.textContent = String(
          error instanceof Error ? error.message : error,
        );
        errorBox.hidden = false;
      }
    })();
  });
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mount(document.getElementById("app")!);
}
