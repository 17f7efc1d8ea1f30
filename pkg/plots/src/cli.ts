// Usage: node dist/cli.js <kind> --csv <path> --out <path.svg>
// Kinds: histogram | boxplot | heatmap-z2 | heatmap-sbm | curves | scatter

import { KINDS, runJob, SchemaError, type FigureKind } from "./job.js";

function usage(): never {
  console.error(`usage: render <${KINDS.join("|")}> --csv <path> --out <path.svg>`);
  process.exit(2);
}

export function main(argv: string[]): number {
  const [kind, ...rest] = argv;
  if (!kind || !(KINDS as readonly string[]).includes(kind)) usage();
  const flags = new Map<string, string>();
  for (let i = 0; i < rest.length; i += 2) {
    if (!rest[i].startsWith("--") || rest[i + 1] === undefined) usage();
    flags.set(rest[i].slice(2), rest[i + 1]);
  }
  const csv = flags.get("csv");
  const out = flags.get("out");
  if (!csv || !out) usage();
  for (const key of flags.keys()) {
    if (key !== "csv" && key !== "out") usage();
  }
  try {
    runJob({ kind: kind as FigureKind, csv, out });
  } catch (err) {
    if (err instanceof SchemaError || err instanceof Error) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
  console.log(`wrote: ${out}`);
  return 0;
}

process.exit(main(process.argv.slice(2)));
