/**
 * Figure renderers, one per plot kind. These never recompute physics: every
 * pixel is a direct rendering of CSV columns produced by the heliumqed CLI.
 */

import { InputError, PlotKind, Table, loadTable } from "./csv.js";
import {
  HEIGHT,
  MARGIN,
  Svg,
  WIDTH,
  drawAxes,
  fmt,
  linearScale,
  logScale,
} from "./svg.js";

export interface PlotJob {
  kind: PlotKind;
  input: string;
  output: string;
}

const FRAME_X: [number, number] = [MARGIN.left, WIDTH - MARGIN.right];
const FRAME_Y: [number, number] = [HEIGHT - MARGIN.bottom, MARGIN.top];

export function renderPlot(job: PlotJob): string {
  const table = loadTable(job.input, job.kind);
  switch (job.kind) {
    case "rabi":
      return renderRabi(table);
    case "validity":
      return renderValidity(table);
    case "distribution":
      return renderDistribution(table);
    case "parity":
      return renderParity(table);
    case "wigner":
      return renderWigner(table);
  }
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

function renderRabi(table: Table): string {
  const taus = table.rows.map((r) => r[0]);
  const exact = table.rows.map((r) => r[1]);
  const numeric = table.rows.map((r) => r[2]);
  const x = linearScale(extent(taus), FRAME_X);
  const y = linearScale([0, 1], FRAME_Y);
  const svg = new Svg();
  drawAxes(svg, x, y, "tau = coupling * t", "excited-state population");
  svg.polyline(
    taus.map((t, i) => [x(t), y(exact[i])] as [number, number]),
    "#1f77b4",
  );
  svg.polyline(
    taus.map((t, i) => [x(t), y(numeric[i])] as [number, number]),
    "#d62728",
    1.0,
    "6 4",
  );
  svg.text(WIDTH - MARGIN.right, MARGIN.top - 12, "solid: closed form, dashed: numeric", "end", 11);
  return svg.render();
}

function renderValidity(table: Table): string {
  const xs = table.rows.map((r) => r[0]);
  const ys = table.rows.map((r) => r[1]);
  if (xs.some((v) => v <= 0) || ys.some((v) => v <= 0)) {
    throw new InputError("validity curves need strictly positive values for log axes");
  }
  const x = logScale(extent(xs), FRAME_X);
  const y = logScale(extent(ys), FRAME_Y);
  const svg = new Svg();
  drawAxes(svg, x, y, table.header[0], "infidelity", { xLog: true, yLog: true });
  const pts = table.rows
    .slice()
    .sort((a, b) => a[0] - b[0])
    .map((r) => [x(r[0]), y(r[1])] as [number, number]);
  svg.polyline(pts, "#1f77b4");
  for (const [px, py] of pts) svg.circle(px, py, 3, "#1f77b4");
  return svg.render();
}

function renderDistribution(table: Table): string {
  const ms = table.rows.map((r) => r[0]);
  const ps = table.rows.map((r) => r[1]);
  const x = linearScale([Math.min(...ms) - 0.5, Math.max(...ms) + 0.5], FRAME_X);
  const y = linearScale([0, Math.max(...ps) * 1.05 || 1], FRAME_Y);
  const svg = new Svg();
  drawAxes(svg, x, y, "photon number m", "p_m");
  const barW = (FRAME_X[1] - FRAME_X[0]) / ms.length;
  ms.forEach((m, i) => {
    const top = y(ps[i]);
    svg.rect(x(m) - barW * 0.4, top, barW * 0.8, FRAME_Y[0] - top, "#1f77b4");
  });
  return svg.render();
}

function renderParity(table: Table): string {
  const labels = table.raw.map((r) => r[0]);
  const values = table.rows.map((r) => r[1]);
  const x = linearScale([-0.5, labels.length - 0.5], FRAME_X);
  const y = linearScale([-1.05, 1.05], FRAME_Y);
  const svg = new Svg();
  drawAxes(svg, x, y, "state", "photon-number parity");
  svg.line(FRAME_X[0], y(0), FRAME_X[1], y(0), "#999999");
  const barW = (FRAME_X[1] - FRAME_X[0]) / labels.length;
  labels.forEach((label, i) => {
    const v = values[i];
    const top = Math.min(y(0), y(v));
    const h = Math.abs(y(v) - y(0));
    svg.rect(x(i) - barW * 0.3, top, barW * 0.6, h, v >= 0 ? "#1f77b4" : "#d62728");
    svg.text(x(i), FRAME_Y[0] + 32, label, "middle", 11);
  });
  return svg.render();
}

/** Diverging blue-white-red map, symmetric around zero. */
export function divergingColor(v: number, vmax: number): string {
  const t = Math.max(-1, Math.min(1, vmax === 0 ? 0 : v / vmax));
  const lerp = (a: number, b: number, u: number) => Math.round(a + (b - a) * u);
  let r: number, g: number, b: number;
  if (t >= 0) {
    r = lerp(255, 178, t);
    g = lerp(255, 24, t);
    b = lerp(255, 43, t);
  } else {
    r = lerp(255, 33, -t);
    g = lerp(255, 102, -t);
    b = lerp(255, 172, -t);
  }
  return `rgb(${r},${g},${b})`;
}

function renderWigner(table: Table): string {
  const xsAll = table.rows.map((r) => r[0]);
  const psAll = table.rows.map((r) => r[1]);
  const xs = [...new Set(xsAll)].sort((a, b) => a - b);
  const ps = [...new Set(psAll)].sort((a, b) => a - b);
  if (xs.length * ps.length !== table.rows.length) {
    throw new InputError("wigner CSV rows do not form a complete (x, p) grid");
  }
  const grid = new Map<string, number>();
  for (const [xv, pv, wv] of table.rows) grid.set(`${xv}|${pv}`, wv);
  let vmax = 0;
  for (const r of table.rows) vmax = Math.max(vmax, Math.abs(r[2]));

  const x = linearScale(extent(xs), FRAME_X);
  const y = linearScale(extent(ps), FRAME_Y);
  const svg = new Svg();
  const cellW = (FRAME_X[1] - FRAME_X[0]) / xs.length;
  const cellH = (FRAME_Y[0] - FRAME_Y[1]) / ps.length;
  for (const pv of ps) {
    for (const xv of xs) {
      const w = grid.get(`${xv}|${pv}`);
      if (w === undefined) {
        throw new InputError(`missing Wigner sample at (${xv}, ${pv})`);
      }
      svg.rect(x(xv) - cellW / 2, y(pv) - cellH / 2, cellW, cellH, divergingColor(w, vmax));
    }
  }
  drawAxes(svg, x, y, "x quadrature", "p quadrature");
  svg.text(WIDTH - MARGIN.right, MARGIN.top - 12, `|W|max = ${fmt(vmax)}`, "end", 11);
  return svg.render();
}

/**
 * Rabi period from a population trace: twice the mean spacing between
 * successive population maxima (the population oscillates at twice the
 * amplitude frequency, so one full Rabi cycle spans two maxima gaps).
 */
export function extractRabiPeriod(taus: number[], population: number[]): number {
  const peaks: number[] = [];
  for (let i = 1; i < population.length - 1; i++) {
    if (population[i] >= population[i - 1] && population[i] > population[i + 1]) {
      peaks.push(taus[i]);
    }
  }
  if (peaks.length < 2) {
    throw new InputError("trace too short to extract a Rabi period (need two maxima)");
  }
  const gaps = peaks.slice(1).map((t, i) => t - peaks[i]);
  const mean = gaps.reduce((a, b) => a + b, 0) / gaps.length;
  return 2 * mean;
}
