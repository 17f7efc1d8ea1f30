// Phase-transition heatmaps: success proportion per cell, light = high,
// with the theoretical boundary drawn from its closed form on top.

import { requireColumns, type Table } from "../csv.js";
import { sbmBoundaryLower, sbmBoundaryUpper, z2Boundary } from "../overlays.js";
import { fmt, linearScale, logScale, Svg, successColor, type Scale } from "../svg.js";

const WIDTH = 520;
const HEIGHT = 420;
const MARGIN = { left: 60, right: 20, top: 20, bottom: 50 };

export type HeatmapKind = "z2" | "sbm";

function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

/** Data-space samples of the overlay curve(s); exported so tests can check
 * them against the closed forms independently. */
export function overlayPoints(kind: HeatmapKind, xs: number[], samples = 200): [number, number][][] {
  const lo = Math.min(...xs);
  const hi = Math.max(...xs);
  const grid = Array.from({ length: samples }, (_, i) => lo + ((hi - lo) * i) / (samples - 1));
  if (kind === "z2") {
    return [grid.filter((n) => n > 1).map((n) => [n, z2Boundary(n)] as [number, number])];
  }
  const upper = grid.map((b) => [b, sbmBoundaryUpper(b)] as [number, number]);
  const lower = grid
    .map((b) => [b, sbmBoundaryLower(b)] as [number, number | null])
    .filter((p): p is [number, number] => p[1] !== null);
  return lower.length > 1 ? [upper, lower] : [upper];
}

function cellEdges(values: number[], scale: Scale): Map<number, [number, number]> {
  // cell boundaries at midpoints between the scaled axis positions, so they
  // stay finite whatever the axis spacing; end cells extend half a step
  const pos = values.map(scale);
  const edges = new Map<number, [number, number]>();
  values.forEach((v, i) => {
    const lo = i === 0 ? pos[0] - (pos[1] - pos[0]) / 2 : (pos[i - 1] + pos[i]) / 2;
    const hi =
      i === values.length - 1 ? pos[i] + (pos[i] - pos[i - 1]) / 2 : (pos[i] + pos[i + 1]) / 2;
    edges.set(v, [lo, hi]);
  });
  return edges;
}

export function renderHeatmap(table: Table, kind: HeatmapKind): string {
  const [xCol, yCol] = kind === "z2" ? ["n", "sigma"] : ["b", "a"];
  requireColumns(table, [xCol, yCol, "success_rate"]);
  const xs = uniqueSorted(table.rows.map((r) => r[xCol]));
  const ys = uniqueSorted(table.rows.map((r) => r[yCol]));
  const xRange: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
  const yRange: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];
  const x =
    kind === "z2"
      ? logScale([xs[0], xs[xs.length - 1]], xRange)
      : linearScale([xs[0], xs[xs.length - 1]], xRange);
  const y =
    kind === "z2"
      ? logScale([Math.max(ys[0], 1e-9), ys[ys.length - 1]], yRange)
      : linearScale([ys[0], ys[ys.length - 1]], yRange);
  const svg = new Svg(WIDTH, HEIGHT);
  svg.rect(0, 0, WIDTH, HEIGHT, { fill: "white" });
  const xEdges = cellEdges(xs, x);
  const yEdges = cellEdges(ys, y);
  const clampX = (v: number) => Math.min(Math.max(v, xRange[0]), xRange[1]);
  const clampY = (v: number) => Math.min(Math.max(v, yRange[1]), yRange[0]);
  for (const row of table.rows) {
    const [x0, x1] = xEdges.get(row[xCol])!.map(clampX);
    const [y0, y1] = yEdges.get(row[yCol])!.map(clampY);
    svg.rect(Math.min(x0, x1), Math.min(y0, y1), Math.abs(x1 - x0), Math.abs(y1 - y0), {
      fill: successColor(row.success_rate),
    });
  }
  for (const branch of overlayPoints(kind, xs)) {
    const inside = branch.filter(
      ([, v]) => v >= Math.min(y.domain[0], y.domain[1]) && v <= Math.max(y.domain[0], y.domain[1]),
    );
    if (inside.length > 1) {
      svg.polyline(
        inside.map(([u, v]) => [x(u), y(v)] as [number, number]),
        { stroke: "red", "stroke-width": 2 },
      );
    }
  }
  svg.line(MARGIN.left, yRange[0], WIDTH - MARGIN.right, yRange[0], { stroke: "black" });
  svg.line(MARGIN.left, yRange[0], MARGIN.left, MARGIN.top, { stroke: "black" });
  for (const tick of [xs[0], xs[Math.floor(xs.length / 2)], xs[xs.length - 1]]) {
    svg.text(x(tick) - 8, yRange[0] + 16, fmt(tick));
  }
  for (const tick of [ys[0], ys[Math.floor(ys.length / 2)], ys[ys.length - 1]]) {
    svg.text(MARGIN.left - 45, y(tick) + 4, fmt(tick));
  }
  svg.text(WIDTH / 2 - 10, HEIGHT - 10, xCol);
  svg.text(14, MARGIN.top + 6, yCol);
  return svg.render();
}
