/**
 * Four-chart report from one summary CSV: mean inefficiency, probability of
 * fuel emergency, probability of loss of separation, and mean resolver
 * compute seconds, each grouped by algorithm with one bar per aircraft
 * count, plus an index page linking the charts.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { ChartSpec, renderBarChart } from "./chart";
import { parseSummaryCsv } from "./csv";

export const CHARTS: ChartSpec[] = [
  { metric: "mean_inefficiency", title: "Mean inefficiency by algorithm" },
  { metric: "p_fuel_emergency", title: "Probability of fuel emergency" },
  { metric: "p_los", title: "Probability of loss of separation" },
  { metric: "mean_compute_seconds", title: "Mean compute seconds per run" },
];

export function renderReport(summaryCsvPath: string, outputDir: string): string[] {
  const text = fs.readFileSync(summaryCsvPath, "utf8");
  const rows = parseSummaryCsv(text);
  fs.mkdirSync(outputDir, { recursive: true });
  const written: string[] = [];
  const items: string[] = [];
  for (const spec of CHARTS) {
    const file = `${spec.metric}.svg`;
    fs.writeFileSync(path.join(outputDir, file), renderBarChart(rows, spec));
    written.push(file);
    items.push(
      `    <figure><img src="${file}" alt="${spec.title}" ` +
        `width="640" height="360"/><figcaption>${spec.title}` +
        `</figcaption></figure>`,
    );
  }
  const index = [
    "<!DOCTYPE html>",
    '<html lang="en">',
    "<head>",
    '  <meta charset="utf-8"/>',
    "  <title>Conflict resolution report</title>",
    "</head>",
    "<body>",
    "  <h1>Conflict resolution report</h1>",
    ...items,
    "</body>",
    "</html>",
    "",
  ].join("\n");
  fs.writeFileSync(path.join(outputDir, "index.html"), index);
  written.push("index.html");
  return written;
}
