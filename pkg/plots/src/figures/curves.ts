// Misclassification exponent curves: one polyline per n on the
// log(mean rate)/log n scale against a, plus the theoretical exponent
// curve computed from its closed form (no markers, like the reference).

import { requireColumns, type Table } from "../csv.js";
import { misclTheory } from "../overlays.js";
import { fmt, linearScale, Svg } from "../svg.js";

const WIDTH = 500;
const HEIGHT = 380;
const MARGIN = { left: 60, right: 105, top: 20, bottom: 45 };
const MARKERS = ["square", "cross", "circle"] as const;

export function theoryPoints(aValues: number[], b: number, samples = 200): [number, number][] {
  const lo = Math.min(...aValues);
  const hi = Math.max(...aValues);
  return Array.from({ length: samples }, (_, i) => {
    const a = lo + ((hi - lo) * i) / (samples - 1);
    return [a, misclTheory(a, b)] as [number, number];
  });
}

export function renderMisclCurves(table: Table): string {
  requireColumns(table, ["n", "a", "b", "log_mean_over_log_n", "skipped"]);
  const rows = table.rows.filter((r) => r.skipped === 0 && Number.isFinite(r.log_mean_over_log_n));
  if (rows.length === 0) {
    throw new Error("no usable rows: every cell is skipped or has -inf log rate");
  }
  const b = rows[0].b;
  const ns = [...new Set(rows.map((r) => r.n))].sort((a, c) => a - c);
  const aValues = [...new Set(rows.map((r) => r.a))].sort((a, c) => a - c);
  const theory = theoryPoints(aValues, b);
  const yValues = rows.map((r) => r.log_mean_over_log_n).concat(theory.map(([, v]) => v));
  const x = linearScale([Math.min(...aValues), Math.max(...aValues)], [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale(
    [Math.min(...yValues) * 1.05, 0],
    [HEIGHT - MARGIN.bottom, MARGIN.top],
  );
  const svg = new Svg(WIDTH, HEIGHT);
  svg.rect(0, 0, WIDTH, HEIGHT, { fill: "white" });
  svg.polyline(
    theory.map(([a, v]) => [x(a), y(v)] as [number, number]),
    { stroke: "red", "stroke-width": 1.5 },
  );
  ns.forEach((n, idx) => {
    const series = rows
      .filter((r) => r.n === n)
      .sort((r1, r2) => r1.a - r2.a)
      .map((r) => [x(r.a), y(r.log_mean_over_log_n)] as [number, number]);
    svg.polyline(series, { stroke: "rgb(40,70,140)", "stroke-width": 1 });
    const marker = MARKERS[idx % MARKERS.length];
    for (const [px, py] of series) {
      if (marker === "circle") svg.circle(px, py, 3, { fill: "none", stroke: "rgb(40,70,140)" });
      else if (marker === "square")
        svg.rect(px - 2.5, py - 2.5, 5, 5, { fill: "none", stroke: "rgb(40,70,140)" });
      else {
        svg.line(px - 3, py - 3, px + 3, py + 3, { stroke: "rgb(40,70,140)" });
        svg.line(px - 3, py + 3, px + 3, py - 3, { stroke: "rgb(40,70,140)" });
      }
    }
    svg.text(WIDTH - MARGIN.right + 8, MARGIN.top + 14 * (idx + 1), `n=${fmt(n)} (${marker})`);
  });
  svg.text(WIDTH - MARGIN.right + 8, MARGIN.top, "theory (red)");
  svg.line(MARGIN.left, y(0), WIDTH - MARGIN.right, y(0), { stroke: "black" });
  svg.line(MARGIN.left, HEIGHT - MARGIN.bottom, MARGIN.left, MARGIN.top, { stroke: "black" });
  for (const tick of aValues) {
    svg.text(x(tick) - 5, HEIGHT - MARGIN.bottom + 16, fmt(tick));
  }
  svg.text(WIDTH / 2 - 50, HEIGHT - 8, `a (b=${fmt(b)})`);
  svg.text(8, MARGIN.top + 8, "log(mean rate)/log n");
  return svg.render();
}
