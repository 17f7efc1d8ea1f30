// Completion ratio statistics against n: crosses for the reconstruction
// ratio, circles for the singular-subspace ratio.  Flat curves mean the
// scaled max-norm errors track the Frobenius errors as n grows.

import { requireColumns, type Table } from "../csv.js";
import { fmt, linearScale, Svg } from "../svg.js";

const WIDTH = 480;
const HEIGHT = 340;
const MARGIN = { left: 60, right: 20, top: 25, bottom: 45 };

export function renderRatioScatter(table: Table): string {
  requireColumns(table, ["n", "mean_r_mat", "mean_r_vec"]);
  const rows = table.rows.filter(
    (r) => Number.isFinite(r.mean_r_mat) && Number.isFinite(r.mean_r_vec),
  );
  if (rows.length === 0) {
    throw new Error("no usable rows: all ratio cells are degenerate");
  }
  const ns = rows.map((r) => r.n);
  const values = rows.flatMap((r) => [r.mean_r_mat, r.mean_r_vec]);
  const x = linearScale([Math.min(...ns), Math.max(...ns)], [MARGIN.left, WIDTH - MARGIN.right]);
  const y = linearScale([0, Math.max(...values) * 1.3], [HEIGHT - MARGIN.bottom, MARGIN.top]);
  const svg = new Svg(WIDTH, HEIGHT);
  svg.rect(0, 0, WIDTH, HEIGHT, { fill: "white" });
  svg.line(MARGIN.left, y(0), WIDTH - MARGIN.right, y(0), { stroke: "black" });
  svg.line(MARGIN.left, y(0), MARGIN.left, MARGIN.top, { stroke: "black" });
  for (const row of rows) {
    const px = x(row.n);
    const pm = y(row.mean_r_mat);
    svg.line(px - 4, pm - 4, px + 4, pm + 4, { stroke: "rgb(180,40,40)", "stroke-width": 1.5 });
    svg.line(px - 4, pm + 4, px + 4, pm - 4, { stroke: "rgb(180,40,40)", "stroke-width": 1.5 });
    svg.circle(px, y(row.mean_r_vec), 4, { fill: "none", stroke: "rgb(40,70,140)", "stroke-width": 1.5 });
  }
  for (const row of rows) {
    svg.text(x(row.n) - 12, HEIGHT - MARGIN.bottom + 16, fmt(row.n));
  }
  const ticks = [0, Math.max(...values)];
  for (const t of ticks) {
    svg.text(MARGIN.left - 48, y(t) + 4, fmt(Math.round(t * 1000) / 1000));
  }
  svg.text(WIDTH / 2 - 5, HEIGHT - 8, "n");
  svg.text(8, MARGIN.top - 8, "ratio (x = reconstruction, o = subspaces)");
  return svg.render();
}
