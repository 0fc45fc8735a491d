#!/usr/bin/env node
/**
 * CSV -> figure command line:
 *
 *   nlsplit-figures --kind convergence --input out/convergence.csv --output fig.svg
 *
 * The output format follows the file extension: .svg writes the scene
 * directly; .png rasterizes it. Exit codes: 0 ok, 1 usage/schema errors,
 * 2 I/O failures.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { SchemaMismatchError } from "./csv.js";
import { renderFromCsv, type FigureKind } from "./figures.js";

const KINDS = new Set(["convergence", "decay", "pseudoconf", "scattering"]);

function usage(): string {
  return "usage: nlsplit-figures --kind {convergence,decay,pseudoconf,scattering} --input CSV --output IMG[.svg|.png]";
}

export async function run(argv: string[]): Promise<number> {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      console.error(usage());
      return 1;
    }
    args.set(key.slice(2), argv[i + 1]);
  }
  const kind = args.get("kind");
  const input = args.get("input");
  const output = args.get("output");
  if (!kind || !input || !output || !KINDS.has(kind)) {
    console.error(usage());
    return 1;
  }

  let csvText: string;
  try {
    csvText = readFileSync(input, "utf8");
  } catch (err) {
    console.error(`error: cannot read ${input}: ${(err as Error).message}`);
    return 2;
  }

  let svg: string;
  try {
    svg = renderFromCsv(kind as FigureKind, csvText, input);
  } catch (err) {
    if (err instanceof SchemaMismatchError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }

  try {
    if (output.endsWith(".png")) {
      const { Resvg } = await import("@resvg/resvg-js");
      const png = new Resvg(svg, { fitTo: { mode: "original" } }).render().asPng();
      writeFileSync(output, png);
    } else {
      writeFileSync(output, svg);
    }
  } catch (err) {
    console.error(`error: cannot write ${output}: ${(err as Error).message}`);
    return 2;
  }
  return 0;
}

const invokedDirectly = process.argv[1] && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  run(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
