// Three-box comparison of the per-trial entrywise errors: raw vs truth,
// linearization vs truth, and the residual (which should sit lowest).

import { column, type Table } from "../csv.js";
import { fmt, linearScale, Svg } from "../svg.js";

const WIDTH = 420;
const HEIGHT = 340;
const MARGIN = { left: 55, right: 15, top: 15, bottom: 50 };

const SERIES: [string, string][] = [
  ["err_raw", "(i) raw"],
  ["err_linearization_vs_truth", "(ii) linearized"],
  ["err_residual", "(iii) residual"],
];

function quantile(sorted: number[], q: number): number {
  const pos = (sorted.length - 1) * q;
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo);
}

export interface BoxStats {
  low: number;
  q1: number;
  median: number;
  q3: number;
  high: number;
}

export function boxStats(values: number[]): BoxStats {
  const sorted = [...values].sort((a, b) => a - b);
  const q1 = quantile(sorted, 0.25);
  const q3 = quantile(sorted, 0.75);
  const iqr = q3 - q1;
  const low = Math.min(...sorted.filter((v) => v >= q1 - 1.5 * iqr));
  const high = Math.max(...sorted.filter((v) => v <= q3 + 1.5 * iqr));
  return { low, q1, median: quantile(sorted, 0.5), q3, high };
}

export function renderBoxplot(table: Table): string {
  const stats = SERIES.map(([name]) => boxStats(column(table, name)));
  const top = Math.max(...stats.map((s) => s.high)) * 1.08;
  const y = linearScale([0, top], [HEIGHT - MARGIN.bottom, MARGIN.top]);
  const svg = new Svg(WIDTH, HEIGHT);
  svg.rect(0, 0, WIDTH, HEIGHT, { fill: "white" });
  const slot = (WIDTH - MARGIN.left - MARGIN.right) / SERIES.length;
  stats.forEach((s, i) => {
    const cx = MARGIN.left + slot * (i + 0.5);
    const half = slot * 0.22;
    svg.line(cx, y(s.low), cx, y(s.q1), { stroke: "black" });
    svg.line(cx, y(s.q3), cx, y(s.high), { stroke: "black" });
    svg.line(cx - half / 2, y(s.low), cx + half / 2, y(s.low), { stroke: "black" });
    svg.line(cx - half / 2, y(s.high), cx + half / 2, y(s.high), { stroke: "black" });
    svg.rect(cx - half, y(s.q3), 2 * half, y(s.q1) - y(s.q3), {
      fill: "rgb(170,200,235)",
      stroke: "black",
    });
    svg.line(cx - half, y(s.median), cx + half, y(s.median), {
      stroke: "rgb(180,30,30)",
      "stroke-width": 1.5,
    });
    svg.text(cx - 32, HEIGHT - MARGIN.bottom + 18, SERIES[i][1]);
  });
  svg.line(MARGIN.left, y(0), WIDTH - MARGIN.right, y(0), { stroke: "black" });
  for (let tick = 0; tick <= top; tick += top > 2 ? 0.5 : 0.25) {
    svg.line(MARGIN.left - 4, y(tick), MARGIN.left, y(tick), { stroke: "black" });
    svg.text(MARGIN.left - 40, y(tick) + 4, fmt(Math.round(tick * 100) / 100));
  }
  svg.text(12, MARGIN.top + 8, "sqrt(n) x sup-norm error");
  return svg.render();
}
