#!/usr/bin/env node
/**
 * Render a benchmark CSV as a multi-panel SVG.
 *
 * Usage:
 *   plot --csv bench.csv --out fig.svg
 *   plot --csv bench.csv --out fig.svg --families linear,linear_cut --engines lkt-full,tree
 *   plot --csv bench.csv --out fig.svg --linear-y
 */

import { parseArgs } from "node:util";
import { render } from "./plot.js";

async function main(): Promise<number> {
  const { values } = parseArgs({
    options: {
      csv: { type: "string" },
      out: { type: "string" },
      families: { type: "string" },
      engines: { type: "string" },
      "linear-y": { type: "boolean", default: false },
    },
  });
  if (!values.csv || !values.out) {
    console.error("usage: plot --csv bench.csv --out fig.svg [--families a,b] [--engines x,y] [--linear-y]");
    return 2;
  }
  const svg = await render({
    csvPath: values.csv,
    outPath: values.out,
    families: values.families?.split(","),
    engines: values.engines?.split(","),
    logY: !values["linear-y"],
  });
  const panels = (svg.match(/class="panel"/g) ?? []).length;
  console.log(`wrote ${values.out} (${panels} panels)`);
  return 0;
}

main().then(
  (code) => process.exit(code),
  (err) => {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    process.exit(1);
  },
);
