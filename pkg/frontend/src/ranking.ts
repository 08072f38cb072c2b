/** Ordered card list for ranking candidates by drag-and-drop.
 *
 * The list owns the display order only: candidate ids and values are never
 * rewritten after construction, so the order read back at submission time
 * is a permutation of exactly the ids that were fetched. Reordering happens
 * through drag-and-drop or the per-card arrow buttons; both paths go
 * through `move`, which re-renders and reports the new order.
 */

import type { Candidate } from "./types.js";
import { candidateColor } from "./parcoords.js";

export class RankingBoard {
  private order: number[]; // positions into `candidates`, best first
  private dragFrom: number | null = null;
  readonly element: HTMLOListElement;

  constructor(
    private readonly candidates: Candidate[],
    private readonly onChange: (order: string[]) => void = () => {},
  ) {
    this.order = candidates.map((_, i) => i);
    this.element = document.createElement("ol");
    this.element.className = "ranking-board";
    this.render();
  }

  /** Candidate ids, best first, in the user's current arrangement. */
  currentOrder(): string[] {
    return this.order.map((i) => this.candidates[i]!.id);
  }

  /** Move the card at display position `from` to display position `to`. */
  move(from: number, to: number): void {
    const n = this.order.length;
    if (from === to || from < 0 || to < 0 || from >= n || to >= n) return;
    const [slot] = this.order.splice(from, 1);
    this.order.splice(to, 0, slot!);
    this.render();
    this.onChange(this.currentOrder());
  }

  private render(): void {
    this.element.textContent = "";
    this.order.forEach((candidateIndex, position) => {
      const candidate = this.candidates[candidateIndex]!;
      const item = document.createElement("li");
      item.className = "ranking-card";
      item.draggable = true;
      item.dataset.candidateId = candidate.id;

      item.addEventListener("dragstart", (event) => {
        this.dragFrom = position;
        item.classList.add("dragging");
        // some browsers require payload data for the drag to begin
        try {
          event.dataTransfer?.setData("text/plain", candidate.id);
        } catch {
          /* jsdom has no DataTransfer; position is tracked on the board */
        }
      });
      item.addEventListener("dragend", () => {
        this.dragFrom = null;
        item.classList.remove("dragging");
      });
      item.addEventListener("dragover", (event) => {
        event.preventDefault();
        item.classList.add("drop-target");
      });
      item.addEventListener("dragleave", () => {
        item.classList.remove("drop-target");
      });
      item.addEventListener("drop", (event) => {
        event.preventDefault();
        if (this.dragFrom !== null) this.move(this.dragFrom, position);
        this.dragFrom = null;
      });

      const rank = document.createElement("span");
      rank.className = "rank-slot";
      rank.textContent = String(position + 1);
      item.appendChild(rank);

      const swatch = document.createElement("span");
      swatch.className = "swatch";
      swatch.style.background = candidateColor(
        candidateIndex,
        this.candidates.length,
      );
      item.appendChild(swatch);

      const body = document.createElement("span");
      body.className = "card-body";
      const title = document.createElement("strong");
      title.textContent = candidate.id;
      body.appendChild(title);
      const values = document.createElement("span");
      values.className = "card-values";
      values.textContent = candidate.values
        .map((v, j) => `f_${j + 1}=${v.toPrecision(4)}`)
        .join("  ");
      body.appendChild(values);
      item.appendChild(body);

      for (const [label, delta, cls] of [
        ["▲", -1, "move-up"],
        ["▼", +1, "move-down"],
      ] as const) {
        const button = document.createElement("button");
        button.type = "button";
        button.className = cls;
        button.textContent = label;
        button.title = delta < 0 ? "rank higher" : "rank lower";
        button.addEventListener("click", () =>
          this.move(position, position + delta),
        );
        item.appendChild(button);
      }

      this.element.appendChild(item);
    });
  }
}
