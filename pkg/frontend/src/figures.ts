/**
 * Shape sweep CSV rows into the five standard result figures.
 *
 * Figures 1-2 come from a language-size sweep of the three-valued
 * operator (one series per n), figures 3-4 from a four-variant sweep
 * (one series per operator/selection pair), figure 5 from per-run
 * trajectories at a single threshold (mean over runs per variant).
 * Series and points are sorted deterministically so repeated renders
 * are byte-identical.
 */

import type { AggregateRow, TrajectoryRow } from "./data.js";

export interface Point {
  x: number;
  y: number;
  /** symmetric error-bar half-height; omitted for trajectory means */
  spread?: number;
}

export interface Series {
  label: string;
  points: Point[];
}

export interface Figure {
  id: string;
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

export class FigureDataError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "FigureDataError";
  }
}

function requireRows<T>(rows: T[], what: string): void {
  if (rows.length === 0) {
    throw new FigureDataError(`${what}: no data rows`);
  }
}

function variantLabel(row: AggregateRow): string {
  return `${row.variant}/${row.selection}`;
}

function singleValued<T, K>(rows: T[], key: (row: T) => K, what: string): K {
  const values = new Set(rows.map(key));
  if (values.size !== 1) {
    throw new FigureDataError(
      `${what}: expected exactly one value, found ${[...values].join(", ")}`,
    );
  }
  return rows.map(key)[0]!;
}

function byX(a: Point, b: Point): number {
  return a.x - b.x;
}

/** One series per language size n; x = gamma, y = mean endpoint vagueness. */
export function buildVaguenessFigure(rows: AggregateRow[]): Figure {
  requireRows(rows, "vagueness figure");
  singleValued(rows, variantLabel, "vagueness figure: operator/selection");
  const sizes = [...new Set(rows.map((r) => r.n))].sort((a, b) => a - b);
  const series = sizes.map((n) => ({
    label: `n=${n}`,
    points: rows
      .filter((r) => r.n === n)
      .map((r) => ({ x: r.gamma, y: r.vaguenessMean, spread: r.vaguenessStd }))
      .sort(byX),
  }));
  return {
    id: "figure1",
    title: "Endpoint vagueness vs inconsistency threshold",
    xLabel: "gamma",
    yLabel: "mean vagueness",
    series,
  };
}

/** One series per language size n; y = mean distinct valuations. */
export function buildDistinctByLanguageFigure(rows: AggregateRow[]): Figure {
  requireRows(rows, "distinct-by-language figure");
  singleValued(rows, variantLabel, "distinct-by-language figure: operator/selection");
  const sizes = [...new Set(rows.map((r) => r.n))].sort((a, b) => a - b);
  const series = sizes.map((n) => ({
    label: `n=${n}`,
    points: rows
      .filter((r) => r.n === n)
      .map((r) => ({ x: r.gamma, y: r.distinctMean, spread: r.distinctStd }))
      .sort(byX),
  }));
  return {
    id: "figure2",
    title: "Endpoint distinct valuations vs inconsistency threshold",
    xLabel: "gamma",
    yLabel: "mean distinct valuations",
    series,
  };
}

/** One series per operator/selection variant; y = mean payoff percentage. */
export function buildPayoffFigure(rows: AggregateRow[]): Figure {
  requireRows(rows, "payoff figure");
  singleValued(rows, (r) => r.n, "payoff figure: language size n");
  const labels = [...new Set(rows.map(variantLabel))].sort();
  const series = labels.map((label) => ({
    label,
    points: rows
      .filter((r) => variantLabel(r) === label)
      .map((r) => ({ x: r.gamma, y: r.payoffPctMean, spread: r.payoffPctStd }))
      .sort(byX),
  }));
  return {
    id: "figure3",
    title: "Endpoint payoff percentage vs inconsistency threshold",
    xLabel: "gamma",
    yLabel: "mean payoff %",
    series,
  };
}

/** One series per operator/selection variant; y = mean distinct valuations. */
export function buildDistinctByVariantFigure(rows: AggregateRow[]): Figure {
  requireRows(rows, "distinct-by-variant figure");
  singleValued(rows, (r) => r.n, "distinct-by-variant figure: language size n");
  const labels = [...new Set(rows.map(variantLabel))].sort();
  const series = labels.map((label) => ({
    label,
    points: rows
      .filter((r) => variantLabel(r) === label)
      .map((r) => ({ x: r.gamma, y: r.distinctMean, spread: r.distinctStd }))
      .sort(byX),
  }));
  return {
    id: "figure4",
    title: "Endpoint distinct valuations by variant",
    xLabel: "gamma",
    yLabel: "mean distinct valuations",
    series,
  };
}

/** One series per variant; x = iteration, y = distinct valuations averaged
 * over runs at that sampled iteration. */
export function buildConvergenceFigure(rows: TrajectoryRow[]): Figure {
  requireRows(rows, "convergence figure");
  const gamma = singleValued(rows, (r) => r.gamma, "convergence figure: gamma");
  const labels = [...new Set(rows.map((r) => r.variant))].sort();
  const series = labels.map((label) => {
    const mine = rows.filter((r) => r.variant === label);
    const byIteration = new Map<number, number[]>();
    for (const r of mine) {
      const bucket = byIteration.get(r.iteration);
      if (bucket === undefined) {
        byIteration.set(r.iteration, [r.distinct]);
      } else {
        bucket.push(r.distinct);
      }
    }
    const points = [...byIteration.entries()]
      .map(([iteration, values]) => ({
        x: iteration,
        y: values.reduce((a, b) => a + b, 0) / values.length,
      }))
      .sort(byX);
    return { label, points };
  });
  return {
    id: "figure5",
    title: `Distinct valuations over time (gamma=${gamma})`,
    xLabel: "iteration",
    yLabel: "mean distinct valuations",
    series,
  };
}

export interface FigureInputs {
  /** aggregate rows of the language-size sweep (figures 1 and 2) */
  languageSweep: AggregateRow[];
  /** aggregate rows of the four-variant sweep (figures 3 and 4) */
  variantSweep: AggregateRow[];
  /** trajectory rows of the single-threshold sweep (figure 5) */
  trajectories: TrajectoryRow[];
}

export function buildAllFigures(inputs: FigureInputs): Figure[] {
  return [
    buildVaguenessFigure(inputs.languageSweep),
    buildDistinctByLanguageFigure(inputs.languageSweep),
    buildPayoffFigure(inputs.variantSweep),
    buildDistinctByVariantFigure(inputs.variantSweep),
    buildConvergenceFigure(inputs.trajectories),
  ];
}
