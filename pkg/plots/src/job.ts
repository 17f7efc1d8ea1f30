// Figure jobs: a CSV (or two), a figure kind, an output path.

import { writeFileSync } from "node:fs";

import { readCsv, SchemaError, type Table } from "./csv.js";
import { renderBoxplot } from "./figures/boxplot.js";
import { renderMisclCurves } from "./figures/curves.js";
import { renderHeatmap } from "./figures/heatmap.js";
import { renderHistogram } from "./figures/histogram.js";
import { renderRatioScatter } from "./figures/scatter.js";

export const KINDS = ["histogram", "boxplot", "heatmap-z2", "heatmap-sbm", "curves", "scatter"] as const;
export type FigureKind = (typeof KINDS)[number];

export interface FigureJob {
  kind: FigureKind;
  csv: string;
  out: string;
}

export function renderTable(kind: FigureKind, table: Table): string {
  switch (kind) {
    case "histogram":
      return renderHistogram(table);
    case "boxplot":
      return renderBoxplot(table);
    case "heatmap-z2":
      return renderHeatmap(table, "z2");
    case "heatmap-sbm":
      return renderHeatmap(table, "sbm");
    case "curves":
      return renderMisclCurves(table);
    case "scatter":
      return renderRatioScatter(table);
  }
}

export function runJob(job: FigureJob): void {
  const table = readCsv(job.csv);
  const svg = renderTable(job.kind, table);
  writeFileSync(job.out, svg);
}

export { SchemaError };
