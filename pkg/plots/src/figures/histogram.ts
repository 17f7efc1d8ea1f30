// Coordinate histogram of the rescaled second eigenvector of one draw:
// two clusters of sqrt(n) u2 values with dashed markers at the population
// coordinates +-1.

import { requireColumns, type Table } from "../csv.js";
import { fmt, linearScale, Svg } from "../svg.js";

const WIDTH = 480;
const HEIGHT = 320;
const MARGIN = { left: 50, right: 15, top: 15, bottom: 40 };

export function renderHistogram(table: Table, bins = 60): string {
  requireColumns(table, ["node", "value"]);
  const values = table.rows.map((r) => r.value);
  const lo = Math.min(-1.5, Math.min(...values));
  const hi = Math.max(1.5, Math.max(...values));
  const counts = new Array<number>(bins).fill(0);
  const step = (hi - lo) / bins;
  for (const v of values) {
    const idx = Math.min(bins - 1, Math.max(0, Math.floor((v - lo) / step)));
    counts[idx] += 1;
  }
  const peak = Math.max(...counts);
  const x = linearScale([lo, hi], [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale([0, peak], [HEIGHT - MARGIN.bottom, MARGIN.top]);
  const svg = new Svg(WIDTH, HEIGHT);
  svg.rect(0, 0, WIDTH, HEIGHT, { fill: "white" });
  counts.forEach((count, i) => {
    if (count === 0) return;
    const x0 = x(lo + i * step);
    const x1 = x(lo + (i + 1) * step);
    svg.rect(x0, y(count), x1 - x0, y(0) - y(count), {
      fill: "rgb(120,150,200)",
      stroke: "white",
      "stroke-width": 0.5,
    });
  });
  for (const center of [-1, 1]) {
    svg.line(x(center), y(0), x(center), MARGIN.top, {
      stroke: "red",
      "stroke-dasharray": "5,4",
    });
  }
  svg.line(MARGIN.left, y(0), WIDTH - MARGIN.right, y(0), { stroke: "black" });
  for (const tick of [-1, 0, 1]) {
    svg.text(x(tick) - 6, y(0) + 16, fmt(tick));
  }
  svg.text(WIDTH / 2 - 60, HEIGHT - 8, "sqrt(n) x eigenvector coordinate");
  svg.text(12, MARGIN.top + 8, "count");
  return svg.render();
}
