/**
 * Typed views of the simulator's two CSV schemas.
 *
 * Aggregate files carry one row per sweep cell with endpoint-metric
 * means and standard deviations; trajectory files carry one row per
 * sampled iteration per run.  Headers are matched exactly so schema
 * drift fails loudly rather than rendering nonsense.
 */

import { CsvError, parseCsv } from "./csv.js";

export const AGGREGATE_HEADER = [
  "variant",
  "selection",
  "init",
  "n",
  "population",
  "gamma",
  "runs",
  "vagueness_mean",
  "vagueness_std",
  "distinct_mean",
  "distinct_std",
  "payoff_pct_mean",
  "payoff_pct_std",
] as const;

export const TRAJECTORY_HEADER = [
  "variant",
  "gamma",
  "run",
  "iteration",
  "distinct",
  "vagueness",
  "payoff_pct",
] as const;

export interface AggregateRow {
  variant: string;
  selection: string;
  init: string;
  n: number;
  population: number;
  gamma: number;
  runs: number;
  vaguenessMean: number;
  vaguenessStd: number;
  distinctMean: number;
  distinctStd: number;
  payoffPctMean: number;
  payoffPctStd: number;
}

export interface TrajectoryRow {
  variant: string;
  gamma: number;
  run: number;
  iteration: number;
  distinct: number;
  vagueness: number;
  payoffPct: number;
}

function expectHeader(actual: string[], expected: readonly string[], what: string): void {
  if (actual.length !== expected.length || actual.some((h, i) => h !== expected[i])) {
    throw new CsvError(
      `${what} header mismatch: expected "${expected.join(",")}", got "${actual.join(",")}"`,
    );
  }
}

function num(field: string, column: string, line: number): number {
  if (field.trim() === "") {
    throw new CsvError(`empty numeric field in column ${column}`, line);
  }
  const value = Number(field);
  if (!Number.isFinite(value)) {
    throw new CsvError(`column ${column}: not a finite number: "${field}"`, line);
  }
  return value;
}

export function parseAggregate(text: string): AggregateRow[] {
  const { header, rows } = parseCsv(text);
  expectHeader(header, AGGREGATE_HEADER, "aggregate");
  return rows.map((r, k) => {
    const line = k + 2;
    return {
      variant: r[0]!,
      selection: r[1]!,
      init: r[2]!,
      n: num(r[3]!, "n", line),
      population: num(r[4]!, "population", line),
      gamma: num(r[5]!, "gamma", line),
      runs: num(r[6]!, "runs", line),
      vaguenessMean: num(r[7]!, "vagueness_mean", line),
      vaguenessStd: num(r[8]!, "vagueness_std", line),
      distinctMean: num(r[9]!, "distinct_mean", line),
      distinctStd: num(r[10]!, "distinct_std", line),
      payoffPctMean: num(r[11]!, "payoff_pct_mean", line),
      payoffPctStd: num(r[12]!, "payoff_pct_std", line),
    };
  });
}

export function parseTrajectories(text: string): TrajectoryRow[] {
  const { header, rows } = parseCsv(text);
  expectHeader(header, TRAJECTORY_HEADER, "trajectory");
  return rows.map((r, k) => {
    const line = k + 2;
    return {
      variant: r[0]!,
      gamma: num(r[1]!, "gamma", line),
      run: num(r[2]!, "run", line),
      iteration: num(r[3]!, "iteration", line),
      distinct: num(r[4]!, "distinct", line),
      vagueness: num(r[5]!, "vagueness", line),
      payoffPct: num(r[6]!, "payoff_pct", line),
    };
  });
}
