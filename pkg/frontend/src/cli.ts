#!/usr/bin/env node
/** Usage: hexsky-report <summary.csv> <output-dir> */

import { CsvError } from "./csv";
import { renderReport } from "./report";

function main(argv: string[]): number {
  if (argv.length !== 2) {
    console.error("usage: hexsky-report <summary.csv> <output-dir>");
    return 2;
  }
  const [summary, outDir] = argv;
  try {
    const files = renderReport(summary, outDir);
    console.log(`wrote ${files.join(", ")} to ${outDir}`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`hexsky-report: ${summary}: ${err.message}`);
    } else {
      console.error(`hexsky-report: ${(err as Error).message}`);
    }
    return 1;
  }
}

process.exit(main(process.argv.slice(2)));
