// Minimal deterministic SVG builder.  All numbers go through one fixed
// formatter, no timestamps or randomness anywhere, so rendering the same
// data twice yields identical bytes.

export function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate ${x}`);
  if (x === 0) return "0";
  const s = x.toPrecision(8);
  // strip trailing zeros without switching to exponent notation
  return s.includes("e") ? s : s.replace(/\.?0+$/, "");
}

export type Attrs = Record<string, string | number>;

function attrs(a: Attrs): string {
  return Object.entries(a)
    .map(([k, v]) => ` ${k}="${typeof v === "number" ? fmt(v) : v}"`)
    .join("");
}

export class Svg {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}">`,
    );
  }

  raw(s: string): this {
    this.parts.push(s);
    return this;
  }

  rect(x: number, y: number, w: number, h: number, a: Attrs = {}): this {
    return this.raw(`<rect${attrs({ x, y, width: w, height: h, ...a })}/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, a: Attrs = {}): this {
    return this.raw(`<line${attrs({ x1, y1, x2, y2, ...a })}/>`);
  }

  circle(cx: number, cy: number, r: number, a: Attrs = {}): this {
    return this.raw(`<circle${attrs({ cx, cy, r, ...a })}/>`);
  }

  path(d: string, a: Attrs = {}): this {
    return this.raw(`<path${attrs({ d, ...a })}/>`);
  }

  polyline(points: [number, number][], a: Attrs = {}): this {
    const d = points
      .map(([x, y], i) => `${i === 0 ? "M" : "L"}${fmt(x)} ${fmt(y)}`)
      .join("");
    return this.path(d, { fill: "none", ...a });
  }

  text(x: number, y: number, content: string, a: Attrs = {}): this {
    return this.raw(
      `<text${attrs({ x, y, "font-family": "sans-serif", "font-size": 11, ...a })}>${content}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

export interface Scale {
  (value: number): number;
  readonly domain: [number, number];
  readonly range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const f = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  Object.assign(f, { domain, range });
  return f;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const inner = linearScale([Math.log(domain[0]), Math.log(domain[1])], range);
  const f = ((value: number) => inner(Math.log(value))) as Scale;
  Object.assign(f, { domain, range });
  return f;
}

// light..dark map for success proportions in [0, 1]; fixed scale so heatmaps
// are comparable across grids
export function successColor(rate: number): string {
  if (Number.isNaN(rate)) return "rgb(200,200,200)";
  const clamped = Math.min(1, Math.max(0, rate));
  const level = Math.round(32 + 223 * clamped);
  return `rgb(${level},${level},${level})`;
}
