/**
 * Summary CSV parsing. The file contract is the simulator's exact header:
 * algorithm,n_aircraft,config_count,mean_inefficiency,p_fuel_emergency,p_los,mean_compute_seconds
 * Malformed input raises CsvError with a line diagnostic.
 */

export const SUMMARY_COLUMNS = [
  "algorithm",
  "n_aircraft",
  "config_count",
  "mean_inefficiency",
  "p_fuel_emergency",
  "p_los",
  "mean_compute_seconds",
] as const;

export const METRIC_COLUMNS = [
  "mean_inefficiency",
  "p_fuel_emergency",
  "p_los",
  "mean_compute_seconds",
] as const;

export type MetricColumn = (typeof METRIC_COLUMNS)[number];

export interface SummaryRow {
  algorithm: string;
  n_aircraft: number;
  config_count: number;
  mean_inefficiency: number;
  p_fuel_emergency: number;
  p_los: number;
  mean_compute_seconds: number;
  /** verbatim cell text per metric column, for exact data-value labels */
  raw: Record<MetricColumn, string>;
}

export class CsvError extends Error {}

export function parseSummaryCsv(text: string): SummaryRow[] {
  const lines = text.split(/\r?\n/);
  if (lines.length === 0 || lines[0].trim() === "") {
    throw new CsvError("line 1: empty file, expected summary header");
  }
  const header = lines[0].trim().split(",");
  for (const col of SUMMARY_COLUMNS) {
    if (!header.includes(col)) {
      throw new CsvError(`line 1: missing column "${col}"`);
    }
  }
  const idx = (col: string) => header.indexOf(col);
  const rows: SummaryRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new CsvError(
        `line ${i + 1}: expected ${header.length} fields, got ${cells.length}`,
      );
    }
    const num = (col: string): number => {
      const value = Number(cells[idx(col)]);
      if (!Number.isFinite(value)) {
        throw new CsvError(
          `line ${i + 1}: column "${col}" is not a number: "${cells[idx(col)]}"`,
        );
      }
      return value;
    };
    const raw = {} as Record<MetricColumn, string>;
    for (const col of METRIC_COLUMNS) {
      raw[col] = cells[idx(col)];
    }
    rows.push({
      algorithm: cells[idx("algorithm")],
      n_aircraft: num("n_aircraft"),
      config_count: num("config_count"),
      mean_inefficiency: num("mean_inefficiency"),
      p_fuel_emergency: num("p_fuel_emergency"),
      p_los: num("p_los"),
      mean_compute_seconds: num("mean_compute_seconds"),
      raw,
    });
  }
  if (rows.length === 0) {
    throw new CsvError("line 2: no data rows");
  }
  return rows;
}
