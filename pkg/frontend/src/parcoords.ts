/** Parallel-coordinates SVG of candidate objective vectors.
 *
 * One vertical axis per objective (labeled f_1..f_m), one polyline per
 * candidate. Axes of currently active objectives carry the "axis-active"
 * class and a thicker stroke so the viewer can tell which objectives the
 * optimizer is evaluating; inactive axes are dimmed. Each axis is scaled
 * independently to the candidate range (padded when degenerate), value
 * labels mark the extremes.
 */

import type { Candidate } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ParcoordsOptions {
  candidates: Candidate[];
  m: number;
  activeMask: number[];
  width?: number;
  height?: number;
  colors?: string[];
}

export function candidateColor(index: number, total: number): string {
  const hue = Math.round((360 * index) / Math.max(total, 1));
  return `hsl(${hue} 70% 45%)`;
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, String(value));
  }
  return el;
}

export function renderParallelCoords(options: ParcoordsOptions): SVGSVGElement {
  const { candidates, m, activeMask } = options;
  const width = options.width ?? Math.max(420, 60 + m * 100);
  const height = options.height ?? 280;
  const top = 34;
  const bottom = height - 26;
  const left = 50;
  const right = width - 30;
  const active = new Set(activeMask);

  const svg = svgElement("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: "100%",
    role: "img",
  });
  svg.classList.add("parcoords");

  const axisX = (j: number) =>
    m === 1 ? (left + right) / 2 : left + ((right - left) * j) / (m - 1);

  // per-objective scale over the shown candidates
  const lo: number[] = [];
  const hi: number[] = [];
  for (let j = 0; j < m; j += 1) {
    const column = candidates.map((c) => c.values[j] ?? 0);
    let min = Math.min(...column);
    let max = Math.max(...column);
    if (!Number.isFinite(min) || !Number.isFinite(max)) {
      min = 0;
      max = 1;
    }
    if (min === max) {
      min -= 0.5;
      max += 0.5;
    }
    lo.push(min);
    hi.push(max);
  }
  const axisY = (j: number, value: number) =>
    bottom - ((bottom - top) * (value - (lo[j] ?? 0))) / ((hi[j] ?? 1) - (lo[j] ?? 0));

  for (let j = 0; j < m; j += 1) {
    const x = axisX(j);
    const isActive = active.has(j + 1);
    const axis = svgElement("g", {});
    axis.classList.add("axis", isActive ? "axis-active" : "axis-inactive");
    axis.dataset.objective = String(j + 1);

    axis.appendChild(
      svgElement("line", {
        x1: x,
        y1: top,
        x2: x,
        y2: bottom,
        stroke: isActive ? "#1a56a8" : "#b9bec7",
        "stroke-width": isActive ? 2.5 : 1,
      }),
    );
    const label = svgElement("text", {
      x,
      y: top - 12,
      "text-anchor": "middle",
      "font-size": 13,
      fill: isActive ? "#1a56a8" : "#8a8f98",
    });
    label.classList.add("axis-label");
    label.textContent = `f_${j + 1}`;
    axis.appendChild(label);

    for (const [value, y, baseline] of [
      [hi[j] ?? 1, top, "hanging"],
      [lo[j] ?? 0, bottom, "auto"],
    ] as const) {
      const tick = svgElement("text", {
        x: x + 4,
        y,
        "font-size": 9,
        fill: "#8a8f98",
        "dominant-baseline": baseline,
      });
      tick.textContent = value.toPrecision(3);
      axis.appendChild(tick);
    }
    svg.appendChild(axis);
  }

  candidates.forEach((candidate, index) => {
    const points = candidate.values
      .slice(0, m)
      .map((value, j) => `${axisX(j)},${axisY(j, value)}`)
      .join(" ");
    const line = svgElement("polyline", {
      points,
      fill: "none",
      stroke: options.colors?.[index] ?? candidateColor(index, candidates.length),
      "stroke-width": 2,
      opacity: 0.85,
    });
    line.classList.add("candidate-line");
    line.dataset.candidateId = candidate.id;
    svg.appendChild(line);
  });

  return svg;
}
