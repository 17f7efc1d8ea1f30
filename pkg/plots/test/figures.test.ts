import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { parseCsv, readCsv, SchemaError } from "../src/csv.js";
import { boxStats } from "../src/figures/boxplot.js";
import { overlayPoints } from "../src/figures/heatmap.js";
import { theoryPoints } from "../src/figures/curves.js";
import { misclTheory, sbmBoundaryLower, sbmBoundaryUpper, z2Boundary } from "../src/overlays.js";
import { KINDS, renderTable, type FigureKind } from "../src/job.js";

const GOLDEN = join(dirname(fileURLToPath(import.meta.url)), "..", "golden");

const JOBS: [FigureKind, string][] = [
  ["histogram", "sbm_linearization_histogram.csv"],
  ["boxplot", "sbm_linearization.csv"],
  ["heatmap-z2", "z2_phase.csv"],
  ["heatmap-sbm", "sbm_phase.csv"],
  ["curves", "sbm_miscl.csv"],
  ["scatter", "nmc_ratios.csv"],
];

describe("golden figure rendering", () => {
  it.each(JOBS)("renders %s without error and byte-stable", (kind, file) => {
    const table = readCsv(join(GOLDEN, file));
    const first = renderTable(kind, table);
    const second = renderTable(kind, table);
    expect(first).toBe(second); // deterministic bytes
    expect(first.startsWith("<svg")).toBe(true);
    expect(first.endsWith("</svg>\n")).toBe(true);
    expect(first.length).toBeGreaterThan(500);
  });

  it("covers every figure kind", () => {
    expect(new Set(JOBS.map(([k]) => k))).toEqual(new Set(KINDS));
  });
});

describe("overlay curves match the closed forms", () => {
  it("z2 boundary at 5 abscissae", () => {
    for (const n of [10, 50, 100, 500, 1000]) {
      expect(Math.abs(z2Boundary(n) - Math.sqrt(n / (2 * Math.log(n))))).toBeLessThan(1e-9);
    }
  });

  it("sbm boundaries at 5 abscissae", () => {
    for (const b of [0.5, 1, 2, 4, 9]) {
      expect(Math.abs(sbmBoundaryUpper(b) - (Math.sqrt(b) + Math.sqrt(2)) ** 2)).toBeLessThan(1e-9);
      const lower = sbmBoundaryLower(b);
      if (b >= 2) {
        expect(lower).not.toBeNull();
        expect(Math.abs((lower as number) - (Math.sqrt(b) - Math.sqrt(2)) ** 2)).toBeLessThan(1e-9);
      } else {
        expect(lower).toBeNull();
      }
    }
  });

  it("misclassification theory exponent at 5 abscissae", () => {
    for (const a of [2.5, 3, 4.5, 6, 8]) {
      const expected = -((Math.sqrt(a) - Math.sqrt(2)) ** 2) / 2;
      expect(Math.abs(misclTheory(a, 2) - expected)).toBeLessThan(1e-9);
    }
  });

  it("heatmap overlay samples are formula values, not data", () => {
    const zBranches = overlayPoints("z2", [8, 1024]);
    expect(zBranches).toHaveLength(1);
    for (const [n, sigma] of zBranches[0].filter((_, i) => i % 40 === 0).slice(0, 5)) {
      expect(Math.abs(sigma - Math.sqrt(n / (2 * Math.log(n))))).toBeLessThan(1e-9);
    }
    const sBranches = overlayPoints("sbm", [0.5, 8]);
    expect(sBranches.length).toBeGreaterThanOrEqual(2);
    for (const [b, a] of sBranches[0].filter((_, i) => i % 40 === 0).slice(0, 5)) {
      expect(Math.abs(a - (Math.sqrt(b) + Math.sqrt(2)) ** 2)).toBeLessThan(1e-9);
    }
    for (const [b, a] of sBranches[1].filter((_, i) => i % 20 === 0).slice(0, 5)) {
      expect(Math.abs(a - (Math.sqrt(b) - Math.sqrt(2)) ** 2)).toBeLessThan(1e-9);
    }
  });

  it("curves figure theory line uses the exponent formula", () => {
    const pts = theoryPoints([2, 8], 2, 50);
    for (const [a, v] of pts.filter((_, i) => i % 10 === 0).slice(0, 5)) {
      expect(Math.abs(v - misclTheory(a, 2))).toBeLessThan(1e-9);
    }
  });
});

describe("figure structure", () => {
  it("boxplot puts the residual box lowest", () => {
    const table = readCsv(join(GOLDEN, "sbm_linearization.csv"));
    const med = (name: string) =>
      boxStats(table.rows.map((r) => r[name])).median;
    expect(med("err_residual")).toBeLessThan(med("err_raw"));
    expect(med("err_residual")).toBeLessThan(med("err_linearization_vs_truth"));
    const svg = renderTable("boxplot", table);
    expect((svg.match(/<rect/g) ?? []).length).toBeGreaterThanOrEqual(4); // bg + three boxes
  });

  it("histogram draws the two population markers", () => {
    const svg = renderTable("histogram", readCsv(join(GOLDEN, "sbm_linearization_histogram.csv")));
    expect((svg.match(/stroke-dasharray/g) ?? []).length).toBe(2);
  });

  it("z2 heatmap has a red overlay and a light-to-dark transition", () => {
    const table = readCsv(join(GOLDEN, "z2_phase.csv"));
    const svg = renderTable("heatmap-z2", table);
    expect(svg).toContain('stroke="red"');
    // monotone transition: below-boundary cells succeed more than far-above
    const below = table.rows.filter((r) => r.sigma <= 0.5 * r.boundary_sigma);
    const above = table.rows.filter((r) => r.sigma >= 4 * r.boundary_sigma);
    const mean = (rows: typeof table.rows) =>
      rows.reduce((s, r) => s + r.success_rate, 0) / rows.length;
    expect(mean(below)).toBeGreaterThan(0.9);
    expect(mean(above)).toBeLessThan(0.1);
  });
});

describe("error handling", () => {
  it("empty CSV is an explicit error", () => {
    expect(() => parseCsv("")).toThrow(SchemaError);
    expect(() => parseCsv("# only a comment\n")).toThrow(SchemaError);
    expect(() => parseCsv("a,b\n")).toThrow(/no data rows/);
  });

  it("schema mismatch names the missing column", () => {
    const table = parseCsv("n,y\n1,2\n");
    expect(() => renderTable("scatter", table)).toThrow(/mean_r_mat/);
    expect(() => renderTable("histogram", table)).toThrow(/node|value/);
  });

  it("ragged rows are rejected", () => {
    expect(() => parseCsv("a,b\n1\n")).toThrow(SchemaError);
  });
});
