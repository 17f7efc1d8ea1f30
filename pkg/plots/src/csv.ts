// Reader for the experiment CSV schema: '#'-prefixed comment lines, one
// header row, comma separators, '.' decimals, 'nan'/'inf'/'-inf' literals.

import { readFileSync } from "node:fs";

export interface Table {
  columns: string[];
  rows: Record<string, number>[];
  comments: string[];
}

export class SchemaError extends Error {}

function parseCell(raw: string): number {
  if (raw === "nan" || raw === "") return NaN;
  if (raw === "inf") return Infinity;
  if (raw === "-inf") return -Infinity;
  const value = Number(raw);
  if (Number.isNaN(value) && raw !== "NaN") {
    throw new SchemaError(`cannot parse numeric cell ${JSON.stringify(raw)}`);
  }
  return value;
}

export function parseCsv(text: string): Table {
  const lines = text.split("\n").filter((line) => line.length > 0);
  const comments = lines.filter((l) => l.startsWith("#")).map((l) => l.slice(1).trim());
  const body = lines.filter((l) => !l.startsWith("#"));
  if (body.length === 0) {
    throw new SchemaError("empty CSV: no header row");
  }
  const columns = body[0].split(",");
  const rows = body.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(`row ${i + 1} has ${cells.length} cells, expected ${columns.length}`);
    }
    const row: Record<string, number> = {};
    columns.forEach((name, j) => (row[name] = parseCell(cells[j])));
    return row;
  });
  if (rows.length === 0) {
    throw new SchemaError("empty CSV: header but no data rows");
  }
  return { columns, rows, comments };
}

export function readCsv(path: string): Table {
  return parseCsv(readFileSync(path, "utf-8"));
}

export function requireColumns(table: Table, needed: string[]): void {
  for (const name of needed) {
    if (!table.columns.includes(name)) {
      throw new SchemaError(`missing required column ${JSON.stringify(name)}`);
    }
  }
}

export function column(table: Table, name: string): number[] {
  requireColumns(table, [name]);
  return table.rows.map((r) => r[name]);
}
