/** Line chart of a finished run: reported utility per interaction.
 *
 * Sessions created without a reference utility have no utility column; the
 * chart then falls back to the best achieved cost so a genuinely human run
 * still gets a trajectory.
 */

import type { TraceRow } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderTraceChart(rows: TraceRow[]): SVGSVGElement {
  const hasUtility = rows.some((r) => typeof r.utility === "number");
  const metric = hasUtility ? "utility" : "best_cost";
  const points = rows
    .map((row) => ({
      x: row.interaction,
      y: hasUtility ? row.utility : row.best_cost,
    }))
    .filter((p): p is { x: number; y: number } => typeof p.y === "number");

  const width = 460;
  const height = 240;
  const left = 56;
  const right = width - 16;
  const top = 22;
  const bottom = height - 34;

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", "100%");
  svg.classList.add("trace-chart");
  svg.dataset.metric = metric;

  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs, 0);
  const xMax = Math.max(...xs, 1);
  let yMin = Math.min(...ys);
  let yMax = Math.max(...ys);
  if (!Number.isFinite(yMin) || !Number.isFinite(yMax)) {
    yMin = 0;
    yMax = 1;
  }
  if (yMin === yMax) {
    yMin -= 0.5;
    yMax += 0.5;
  }
  const sx = (x: number) => left + ((right - left) * (x - xMin)) / (xMax - xMin);
  const sy = (y: number) => bottom - ((bottom - top) * (y - yMin)) / (yMax - yMin);

  const frame = document.createElementNS(SVG_NS, "path");
  frame.setAttribute(
    "d",
    `M ${left} ${top} L ${left} ${bottom} L ${right} ${bottom}`,
  );
  frame.setAttribute("fill", "none");
  frame.setAttribute("stroke", "#8a8f98");
  svg.appendChild(frame);

  const label = document.createElementNS(SVG_NS, "text");
  label.setAttribute("x", String(left));
  label.setAttribute("y", String(top - 8));
  label.setAttribute("font-size", "12");
  label.setAttribute("fill", "#454a54");
  label.textContent = hasUtility
    ? "utility per interaction (higher is better)"
    : "best cost per interaction (lower is better)";
  svg.appendChild(label);

  for (const [value, y] of [
    [yMax, top],
    [yMin, bottom],
  ] as const) {
    const tick = document.createElementNS(SVG_NS, "text");
    tick.setAttribute("x", String(left - 6));
    tick.setAttribute("y", String(y + 4));
    tick.setAttribute("text-anchor", "end");
    tick.setAttribute("font-size", "10");
    tick.setAttribute("fill", "#8a8f98");
    tick.textContent = value.toPrecision(3);
    svg.appendChild(tick);
  }

  if (points.length > 0) {
    const line = document.createElementNS(SVG_NS, "polyline");
    line.setAttribute(
      "points",
      points.map((p) => `${sx(p.x)},${sy(p.y)}`).join(" "),
    );
    line.setAttribute("fill", "none");
    line.setAttribute("stroke", "#1a56a8");
    line.setAttribute("stroke-width", "2");
    svg.appendChild(line);

    for (const p of points) {
      const dot = document.createElementNS(SVG_NS, "circle");
      dot.setAttribute("cx", String(sx(p.x)));
      dot.setAttribute("cy", String(sy(p.y)));
      dot.setAttribute("r", "3");
      dot.setAttribute("fill", "#1a56a8");
      dot.classList.add("trace-point");
      const tip = document.createElementNS(SVG_NS, "title");
      tip.textContent = `interaction ${p.x}: ${p.y.toPrecision(5)}`;
      dot.appendChild(tip);
      svg.appendChild(dot);
    }

    for (const p of points) {
      const tick = document.createElementNS(SVG_NS, "text");
      tick.setAttribute("x", String(sx(p.x)));
      tick.setAttribute("y", String(bottom + 14));
      tick.setAttribute("text-anchor", "middle");
      tick.setAttribute("font-size", "10");
      tick.setAttribute("fill", "#8a8f98");
      tick.textContent = String(p.x);
      svg.appendChild(tick);
    }
  }

  return svg;
}
