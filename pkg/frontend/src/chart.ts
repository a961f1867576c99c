/**
 * Grouped SVG bar chart: one group per algorithm, one sub-bar per aircraft
 * count. Rendering is a pure function of the rows, so identical input gives
 * byte-identical SVG. Bar heights encode the CSV values through a single
 * linear scale (no normalization); each rect carries the verbatim cell text
 * in a data-value attribute.
 */

import { MetricColumn, SummaryRow } from "./csv";

export const PLOT_WIDTH = 640;
export const PLOT_HEIGHT = 360;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 72 };

const ALGORITHM_ORDER = ["implicit", "collaborative", "strategic"];
const BAR_COLORS = ["#4878a8", "#e49444", "#6a9f58", "#d1605e", "#857aab"];

function label(algorithm: string): string {
  return algorithm.charAt(0).toUpperCase() + algorithm.slice(1);
}

function fmt(x: number): string {
  return Number.isInteger(x) ? String(x) : String(Math.round(x * 1e6) / 1e6);
}

export interface ChartSpec {
  metric: MetricColumn;
  title: string;
}

export function renderBarChart(rows: SummaryRow[], spec: ChartSpec): string {
  const algorithms = ALGORITHM_ORDER.filter((a) =>
    rows.some((r) => r.algorithm === a),
  );
  for (const r of rows) {
    if (!algorithms.includes(r.algorithm)) algorithms.push(r.algorithm);
  }
  const counts = [...new Set(rows.map((r) => r.n_aircraft))].sort(
    (a, b) => a - b,
  );
  const innerW = PLOT_WIDTH - MARGIN.left - MARGIN.right;
  const innerH = PLOT_HEIGHT - MARGIN.top - MARGIN.bottom;
  const maxValue = Math.max(...rows.map((r) => r[spec.metric]));
  const scaleMax = maxValue > 0 ? maxValue * 1.05 : 1;
  const pxPerUnit = innerH / scaleMax;

  const groupW = innerW / algorithms.length;
  const barW = (groupW * 0.8) / counts.length;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${PLOT_WIDTH}" ` +
      `height="${PLOT_HEIGHT}" viewBox="0 0 ${PLOT_WIDTH} ${PLOT_HEIGHT}">`,
  );
  parts.push(`<rect width="${PLOT_WIDTH}" height="${PLOT_HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${PLOT_WIDTH / 2}" y="24" text-anchor="middle" ` +
      `font-family="sans-serif" font-size="16" font-weight="bold">` +
      `${spec.title}</text>`,
  );
  // y axis: metric name plus gridlines at quarters of the scale
  parts.push(
    `<text x="16" y="${MARGIN.top + innerH / 2}" text-anchor="middle" ` +
      `font-family="sans-serif" font-size="12" ` +
      `transform="rotate(-90 16 ${MARGIN.top + innerH / 2})">` +
      `${spec.metric}</text>`,
  );
  for (let k = 0; k <= 4; k++) {
    const value = (scaleMax * k) / 4;
    const y = MARGIN.top + innerH - value * pxPerUnit;
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + innerW}" ` +
        `y2="${y}" stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 6}" y="${y + 4}" text-anchor="end" ` +
        `font-family="sans-serif" font-size="10">${fmt(value)}</text>`,
    );
  }
  algorithms.forEach((algorithm, gi) => {
    const gx = MARGIN.left + gi * groupW + groupW * 0.1;
    counts.forEach((n, bi) => {
      const row = rows.find(
        (r) => r.algorithm === algorithm && r.n_aircraft === n,
      );
      if (row === undefined) return;
      const value = row[spec.metric];
      const h = value * pxPerUnit;
      const x = gx + bi * barW;
      const y = MARGIN.top + innerH - h;
      parts.push(
        `<rect x="${x}" y="${y}" width="${barW * 0.92}" height="${h}" ` +
          `fill="${BAR_COLORS[bi % BAR_COLORS.length]}" ` +
          `data-algorithm="${algorithm}" data-n-aircraft="${n}" ` +
          `data-value="${row.raw[spec.metric]}"/>`,
      );
      parts.push(
        `<text x="${x + (barW * 0.92) / 2}" y="${MARGIN.top + innerH + 14}" ` +
          `text-anchor="middle" font-family="sans-serif" font-size="10">` +
          `${n} ac</text>`,
      );
    });
    parts.push(
      `<text x="${gx + (groupW * 0.8) / 2}" y="${MARGIN.top + innerH + 32}" ` +
        `text-anchor="middle" font-family="sans-serif" font-size="12">` +
        `${label(algorithm)}</text>`,
    );
  });
  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}

/** pixels per metric unit used by the chart's linear scale (for tests) */
export function chartScale(rows: SummaryRow[], metric: MetricColumn): number {
  const innerH = PLOT_HEIGHT - MARGIN.top - MARGIN.bottom;
  const maxValue = Math.max(...rows.map((r) => r[metric]));
  const scaleMax = maxValue > 0 ? maxValue * 1.05 : 1;
  return innerH / scaleMax;
}
