import assert from "node:assert/strict";
import { test } from "node:test";

import { chartScale, renderBarChart } from "../src/chart";
import { parseSummaryCsv } from "../src/csv";

const GOLDEN = [
  "algorithm,n_aircraft,config_count,mean_inefficiency," +
    "p_fuel_emergency,p_los,mean_compute_seconds",
  "collaborative,3,5000,1.023200,0.000000,0.000000,0.000029",
  "collaborative,4,5000,1.036300,0.000000,0.000000,0.000031",
  "implicit,3,5000,1.460300,0.002800,0.021800,0.000046",
  "implicit,4,5000,1.685000,0.018800,0.069600,0.000060",
  "strategic,3,5000,1.007400,0.000000,0.000000,0.000902",
  "strategic,4,5000,1.012300,0.000000,0.000000,0.016813",
  "",
].join("\n");

function bars(svg: string): { value: string; height: number }[] {
  const out: { value: string; height: number }[] = [];
  const re = /<rect[^>]*height="([0-9.]+)"[^>]*data-value="([^"]+)"/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(svg)) !== null) {
    out.push({ height: Number(m[1]), value: m[2] });
  }
  return out;
}

test("three algorithms x two aircraft counts gives six bars", () => {
  const rows = parseSummaryCsv(GOLDEN);
  const svg = renderBarChart(rows, {
    metric: "mean_inefficiency",
    title: "Mean inefficiency by algorithm",
  });
  assert.equal(bars(svg).length, 6);
  assert.match(svg, />mean_inefficiency</);
});

test("bar heights equal the CSV values through one linear scale", () => {
  const rows = parseSummaryCsv(GOLDEN);
  for (const metric of ["mean_inefficiency", "p_los"] as const) {
    const svg = renderBarChart(rows, { metric, title: metric });
    const scale = chartScale(rows, metric);
    for (const bar of bars(svg)) {
      assert.ok(Math.abs(bar.height - Number(bar.value) * scale) < 1e-9);
    }
  }
});

test("data-value attributes carry the verbatim CSV text", () => {
  const rows = parseSummaryCsv(GOLDEN);
  const svg = renderBarChart(rows, { metric: "p_los", title: "p_los" });
  const values = bars(svg).map((b) => b.value);
  assert.deepEqual(values.sort(), [
    "0.000000", "0.000000", "0.000000", "0.000000", "0.021800", "0.069600",
  ].sort());
});

test("all-zero metrics render zero-height bars without failure", () => {
  const rows = parseSummaryCsv(GOLDEN).map((r) => ({
    ...r,
    p_fuel_emergency: 0,
    raw: { ...r.raw, p_fuel_emergency: "0.000000" },
  }));
  const svg = renderBarChart(rows, {
    metric: "p_fuel_emergency",
    title: "Probability of fuel emergency",
  });
  for (const bar of bars(svg)) {
    assert.equal(bar.height, 0);
  }
});

test("rendering is deterministic", () => {
  const rows = parseSummaryCsv(GOLDEN);
  const a = renderBarChart(rows, { metric: "p_los", title: "t" });
  const b = renderBarChart(rows, { metric: "p_los", title: "t" });
  assert.equal(a, b);
});
