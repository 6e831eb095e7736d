/**
 * CSV loading and validation for heliumqed artifacts.
 *
 * Every CSV consumed here is produced by the heliumqed CLI, which writes a
 * manifest.json next to its artifacts; a missing manifest means the input
 * was not produced by the CLI and is refused. Headers are matched exactly
 * against the declared plot kind so a mismatched file fails fast.
 */

import { existsSync, readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import Papa from "papaparse";

export type PlotKind = "rabi" | "validity" | "distribution" | "parity" | "wigner";

/** Expected header per kind; `null` entries match any column name. */
const HEADERS: Record<PlotKind, (string | null)[]> = {
  rabi: ["tau", "excited_population_exact", "excited_population_numeric"],
  // first column is the swept quantity (eta, coupling_ratio, drive_ratio)
  validity: [null, "infidelity"],
  distribution: ["m", "p_m"],
  parity: ["state", "parity"],
  wigner: ["x", "p", "w"],
};

/** Columns that hold labels rather than numbers, per kind. */
const TEXT_COLUMNS: Record<PlotKind, number[]> = {
  rabi: [],
  validity: [],
  distribution: [],
  parity: [0],
  wigner: [],
};

export class InputError extends Error {}

export interface Table {
  header: string[];
  /** Numeric cells; text columns hold NaN here. */
  rows: number[][];
  /** Raw string cells for text columns. */
  raw: string[][];
}

export function loadTable(csvPath: string, kind: PlotKind): Table {
  if (!existsSync(csvPath)) {
    throw new InputError(`input CSV not found: ${csvPath}`);
  }
  const manifest = join(dirname(csvPath), "manifest.json");
  if (!existsSync(manifest)) {
    throw new InputError(
      `no manifest.json next to ${csvPath}; only CLI-produced artifacts are plottable`,
    );
  }
  const parsed = Papa.parse<string[]>(readFileSync(csvPath, "utf8").trim(), {
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new InputError(`malformed CSV ${csvPath}: ${parsed.errors[0].message}`);
  }
  const lines = parsed.data;
  if (lines.length === 0) {
    throw new InputError(`empty CSV: ${csvPath}`);
  }
  const header = lines[0];
  const expected = HEADERS[kind];
  const matches =
    header.length === expected.length &&
    expected.every((name, i) => name === null || header[i] === name);
  if (!matches) {
    throw new InputError(
      `header [${header.join(",")}] does not match plot kind '${kind}' ` +
        `(expected [${expected.map((h) => h ?? "*").join(",")}])`,
    );
  }
  const raw = lines.slice(1);
  if (raw.length === 0) {
    throw new InputError(`CSV has a header but no data rows: ${csvPath}`);
  }
  const textCols = new Set(TEXT_COLUMNS[kind]);
  const rows = raw.map((cells, r) =>
    cells.map((cell, c) => {
      if (textCols.has(c)) return NaN;
      const v = Number(cell);
      if (!Number.isFinite(v)) {
        throw new InputError(`non-numeric cell '${cell}' at row ${r + 2}, column ${c + 1}`);
      }
      return v;
    }),
  );
  return { header, rows, raw };
}
