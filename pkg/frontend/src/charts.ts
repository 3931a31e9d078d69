/** SVG chart builders (plain markup strings, no DOM dependency).
 *
 * Scatter for exactly two objectives, parallel coordinates otherwise. Marks
 * carry `data-index` attributes so the app can delegate click handling.
 */

import type { FrontSolution, FrontViewModel, ObjectiveDescriptor } from "./types.js";

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { left: 64, right: 24, top: 24, bottom: 48 };

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function axisLabel(objective: ObjectiveDescriptor): string {
  const arrow = objective.direction === "minimize" ? "↓" : "↑";
  return `${objective.name} (${arrow} ${objective.direction})`;
}

function extent(values: number[]): [number, number] {
  let low = Math.min(...values);
  let high = Math.max(...values);
  if (low === high) {
    low -= 0.5;
    high += 0.5;
  }
  return [low, high];
}

function formatTick(value: number): string {
  return Number.isInteger(value) ? String(value) : value.toFixed(2);
}

export function renderScatter(
  solutions: FrontSolution[],
  objectives: ObjectiveDescriptor[],
  selection: number | null,
): string {
  const plotWidth = WIDTH - MARGIN.left - MARGIN.right;
  const plotHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  const parts: string[] = [
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="chart chart-scatter" role="img">`,
  ];

  if (solutions.length === 0) {
    parts.push(
      `<text class="empty-state" x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle">no solutions in view</text>`,
      "</svg>",
    );
    return parts.join("");
  }

  const [x0, x1] = extent(solutions.map((s) => s.objectives[0]));
  const [y0, y1] = extent(solutions.map((s) => s.objectives[1]));
  const sx = (v: number) => MARGIN.left + ((v - x0) / (x1 - x0)) * plotWidth;
  const sy = (v: number) => MARGIN.top + plotHeight - ((v - y0) / (y1 - y0)) * plotHeight;

  parts.push(
    `<line class="axis" x1="${MARGIN.left}" y1="${MARGIN.top + plotHeight}" x2="${MARGIN.left + plotWidth}" y2="${MARGIN.top + plotHeight}"/>`,
    `<line class="axis" x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${MARGIN.top + plotHeight}"/>`,
    `<text class="axis-label" x="${MARGIN.left + plotWidth / 2}" y="${HEIGHT - 8}" text-anchor="middle">${escapeXml(axisLabel(objectives[0]))}</text>`,
    `<text class="axis-label" x="14" y="${MARGIN.top + plotHeight / 2}" text-anchor="middle" transform="rotate(-90 14 ${MARGIN.top + plotHeight / 2})">${escapeXml(axisLabel(objectives[1]))}</text>`,
    `<text class="tick" x="${MARGIN.left}" y="${MARGIN.top + plotHeight + 18}" text-anchor="middle">${formatTick(x0)}</text>`,
    `<text class="tick" x="${MARGIN.left + plotWidth}" y="${MARGIN.top + plotHeight + 18}" text-anchor="middle">${formatTick(x1)}</text>`,
    `<text class="tick" x="${MARGIN.left - 8}" y="${MARGIN.top + plotHeight}" text-anchor="end">${formatTick(y0)}</text>`,
    `<text class="tick" x="${MARGIN.left - 8}" y="${MARGIN.top + 10}" text-anchor="end">${formatTick(y1)}</text>`,
  );

  for (const solution of solutions) {
    const selected = solution.index === selection;
    parts.push(
      `<circle class="point${selected ? " selected" : ""}" data-index="${solution.index}" ` +
        `cx="${sx(solution.objectives[0]).toFixed(2)}" cy="${sy(solution.objectives[1]).toFixed(2)}" r="${selected ? 9 : 6}">` +
        `<title>#${solution.index}: (${solution.objectives.join(", ")})</title></circle>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function renderParallelCoordinates(
  solutions: FrontSolution[],
  objectives: ObjectiveDescriptor[],
  selection: number | null,
): string {
  const plotWidth = WIDTH - MARGIN.left - MARGIN.right;
  const plotHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  const parts: string[] = [
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" class="chart chart-parallel" role="img">`,
  ];
  if (solutions.length === 0) {
    parts.push(
      `<text class="empty-state" x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle">no solutions in view</text>`,
      "</svg>",
    );
    return parts.join("");
  }

  const axisCount = objectives.length;
  const axisX = (m: number) =>
    MARGIN.left + (axisCount === 1 ? 0 : (m / (axisCount - 1)) * plotWidth);
  const extents = objectives.map((_, m) =>
    extent(solutions.map((s) => s.objectives[m])),
  );
  const sy = (value: number, m: number) => {
    const [low, high] = extents[m];
    return MARGIN.top + plotHeight - ((value - low) / (high - low)) * plotHeight;
  };

  for (let m = 0; m < axisCount; m += 1) {
    const x = axisX(m);
    parts.push(
      `<line class="axis" x1="${x.toFixed(2)}" y1="${MARGIN.top}" x2="${x.toFixed(2)}" y2="${MARGIN.top + plotHeight}"/>`,
      `<text class="axis-label" x="${x.toFixed(2)}" y="${HEIGHT - 8}" text-anchor="middle">${escapeXml(axisLabel(objectives[m]))}</text>`,
      `<text class="tick" x="${x.toFixed(2)}" y="${MARGIN.top - 6}" text-anchor="middle">${formatTick(extents[m][1])}</text>`,
      `<text class="tick" x="${x.toFixed(2)}" y="${MARGIN.top + plotHeight + 16}" text-anchor="middle">${formatTick(extents[m][0])}</text>`,
    );
  }

  for (const solution of solutions) {
    const selected = solution.index === selection;
    const points = solution.objectives
      .map((value, m) => `${axisX(m).toFixed(2)},${sy(value, m).toFixed(2)}`)
      .join(" ");
    parts.push(
      `<polyline class="line${selected ? " selected" : ""}" data-index="${solution.index}" points="${points}" fill="none">` +
        `<title>#${solution.index}: (${solution.objectives.join(", ")})</title></polyline>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function renderChart(
  solutions: FrontSolution[],
  vm: FrontViewModel,
): string {
  return vm.objectives.length === 2
    ? renderScatter(solutions, vm.objectives, vm.selection)
    : renderParallelCoordinates(solutions, vm.objectives, vm.selection);
}

export function countMarks(svg: string): number {
  return (svg.match(/data-index="/g) ?? []).length;
}
