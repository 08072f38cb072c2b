import { describe, expect, it } from "vitest";

import { renderParallelCoords } from "../src/parcoords.js";
import { candidate } from "./helpers.js";

const FIVE = [
  candidate("i1c0", [0.1, 0.9, 0.5, 0.3]),
  candidate("i1c1", [0.4, 0.3, 0.6, 0.2]),
  candidate("i1c2", [0.8, 0.2, 0.1, 0.7]),
  candidate("i1c3", [0.5, 0.5, 0.9, 0.1]),
  candidate("i1c4", [0.2, 0.7, 0.3, 0.6]),
];

describe("renderParallelCoords", () => {
  it("draws one polyline per candidate over one axis per objective", () => {
    const svg = renderParallelCoords({
      candidates: FIVE,
      m: 4,
      activeMask: [1, 4],
    });
    expect(svg.querySelectorAll(".candidate-line")).toHaveLength(5);
    expect(svg.querySelectorAll(".axis")).toHaveLength(4);
  });

  it("highlights exactly the active axes", () => {
    const svg = renderParallelCoords({
      candidates: FIVE,
      m: 4,
      activeMask: [1, 4],
    });
    const byObjective = (n: number) =>
      svg.querySelector(`.axis[data-objective="${n}"]`)!;
    expect(byObjective(1).classList.contains("axis-active")).toBe(true);
    expect(byObjective(4).classList.contains("axis-active")).toBe(true);
    expect(byObjective(2).classList.contains("axis-inactive")).toBe(true);
    expect(byObjective(3).classList.contains("axis-inactive")).toBe(true);
  });

  it("labels the axes f_1..f_m", () => {
    const svg = renderParallelCoords({
      candidates: FIVE,
      m: 4,
      activeMask: [1, 2, 3, 4],
    });
    const labels = [...svg.querySelectorAll(".axis-label")].map(
      (el) => el.textContent,
    );
    expect(labels).toEqual(["f_1", "f_2", "f_3", "f_4"]);
  });

  it("keeps every polyline tagged with its candidate id", () => {
    const svg = renderParallelCoords({
      candidates: FIVE,
      m: 4,
      activeMask: [1, 2],
    });
    const ids = [...svg.querySelectorAll<SVGElement>(".candidate-line")].map(
      (el) => el.dataset.candidateId,
    );
    expect(ids).toEqual(FIVE.map((c) => c.id));
  });

  it("maps larger values to higher axis positions (smaller svg y)", () => {
    const svg = renderParallelCoords({
      candidates: [candidate("a", [0.1, 0.5]), candidate("b", [0.9, 0.5])],
      m: 2,
      activeMask: [1, 2],
    });
    const [lineA, lineB] = [
      ...svg.querySelectorAll<SVGPolylineElement>(".candidate-line"),
    ];
    const firstY = (line: SVGPolylineElement) =>
      Number(line.getAttribute("points")!.split(" ")[0]!.split(",")[1]);
    expect(firstY(lineB!)).toBeLessThan(firstY(lineA!));
  });

  it("survives constant columns without NaN coordinates", () => {
    const svg = renderParallelCoords({
      candidates: [
        candidate("a", [0.5, 0.25]),
        candidate("b", [0.5, 0.75]),
      ],
      m: 2,
      activeMask: [1, 2],
    });
    for (const line of svg.querySelectorAll(".candidate-line")) {
      expect(line.getAttribute("points")).not.toContain("NaN");
    }
  });
});
