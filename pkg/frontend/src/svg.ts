/**
 * Minimal deterministic SVG builder: fixed canvas size, fixed fonts, fixed
 * number formatting, no timestamps or random ids, so identical inputs give
 * byte-identical files.
 */

export const WIDTH = 640;
export const HEIGHT = 440;
export const MARGIN = { left: 70, right: 20, top: 30, bottom: 55 };

export function fmt(v: number): string {
  if (v === 0) return "0";
  const s = v.toPrecision(6);
  // strip trailing zeros for stable, compact output
  return String(Number(s));
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const lo = Math.log10(domain[0]);
  const hi = Math.log10(domain[1]);
  const inner = linearScale([lo, hi], range);
  const fn = ((v: number) => inner(Math.log10(v))) as Scale;
  fn.domain = domain;
  return fn;
}

export function ticks(domain: [number, number], n = 6): number[] {
  const [lo, hi] = domain;
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const err = span / n / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const out: number[] = [];
  for (let v = Math.ceil(lo / s) * s; v <= hi + 1e-12 * span; v += s) {
    out.push(Math.abs(v) < s * 1e-9 ? 0 : v);
  }
  return out;
}

export class Svg {
  private parts: string[] = [];

  constructor(private width = WIDTH, private height = HEIGHT) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
        `height="${height}" viewBox="0 0 ${width} ${height}">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
    );
  }

  raw(s: string): void {
    this.parts.push(s);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  polyline(points: [number, number][], stroke: string, width = 1.5, dash?: string): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${stroke}" ` +
        `stroke-width="${width}"${dashAttr}/>`,
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`,
    );
  }

  circle(cx: number, cy: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, s: string, anchor = "middle", size = 12, rotate?: number): void {
    const tr = rotate !== undefined ? ` transform="rotate(${rotate} ${fmt(x)} ${fmt(y)})"` : "";
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" ` +
        `font-family="Helvetica,Arial,sans-serif" font-size="${size}"${tr}>${escapeXml(s)}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Draw axes with tick marks and labels into the plot frame. */
export function drawAxes(
  svg: Svg,
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
  opts: { xLog?: boolean; yLog?: boolean } = {},
): void {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  svg.line(x0, y0, x1, y0, "black");
  svg.line(x0, y0, x0, y1, "black");
  const xTicks = opts.xLog ? logTicks(xScale.domain) : ticks(xScale.domain);
  for (const t of xTicks) {
    const px = xScale(t);
    svg.line(px, y0, px, y0 + 5, "black");
    svg.text(px, y0 + 18, tickLabel(t, opts.xLog));
  }
  const yTicks = opts.yLog ? logTicks(yScale.domain) : ticks(yScale.domain);
  for (const t of yTicks) {
    const py = yScale(t);
    svg.line(x0 - 5, py, x0, py, "black");
    svg.text(x0 - 8, py + 4, tickLabel(t, opts.yLog), "end");
  }
  svg.text((x0 + x1) / 2, HEIGHT - 12, xLabel);
  svg.text(18, (y0 + y1) / 2, yLabel, "middle", 12, -90);
}

function logTicks(domain: [number, number]): number[] {
  const lo = Math.ceil(Math.log10(domain[0]) - 1e-9);
  const hi = Math.floor(Math.log10(domain[1]) + 1e-9);
  const out: number[] = [];
  for (let e = lo; e <= hi; e++) out.push(Math.pow(10, e));
  return out;
}

function tickLabel(v: number, log?: boolean): string {
  if (log) {
    const e = Math.round(Math.log10(v));
    return `1e${e}`;
  }
  return fmt(v);
}
