#!/usr/bin/env node
/**
 * heliumqed-plot <kind> <in.csv> <out.svg>
 *
 * Kinds: rabi | validity | distribution | parity | wigner.
 * Exit codes: 0 success, 2 bad invocation or input.
 *
 * The output file is only written when rendering succeeds; bad inputs
 * (wrong header, missing manifest, empty data) leave no artifact behind.
 */

import { writeFileSync } from "node:fs";
import { InputError, PlotKind } from "./csv.js";
import { renderPlot } from "./plots.js";

const KINDS: PlotKind[] = ["rabi", "validity", "distribution", "parity", "wigner"];

export function main(argv: string[]): number {
  if (argv.length !== 3) {
    process.stderr.write(
      `usage: heliumqed-plot <${KINDS.join("|")}> <in.csv> <out.svg>\n`,
    );
    return 2;
  }
  const [kind, input, output] = argv;
  if (!KINDS.includes(kind as PlotKind)) {
    process.stderr.write(`unknown plot kind '${kind}' (choose from ${KINDS.join(", ")})\n`);
    return 2;
  }
  let svg: string;
  try {
    svg = renderPlot({ kind: kind as PlotKind, input, output });
  } catch (err) {
    if (err instanceof InputError) {
      process.stderr.write(`input error: ${err.message}\n`);
      return 2;
    }
    throw err;
  }
  writeFileSync(output, svg);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
