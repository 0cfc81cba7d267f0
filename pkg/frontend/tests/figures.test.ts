import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseAggregate, parseTrajectories } from "../src/data.js";
import {
  FigureDataError,
  buildAllFigures,
  buildConvergenceFigure,
  buildPayoffFigure,
  buildVaguenessFigure,
} from "../src/figures.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));
const read = (name: string): string => readFileSync(join(FIXTURES, name), "utf8");

const languageSweep = parseAggregate(read("fig1-2_aggregate.csv"));
const variantSweep = parseAggregate(read("fig3-4_aggregate.csv"));
const trajectories = parseTrajectories(read("fig5_trajectories.csv"));

describe("buildAllFigures", () => {
  const figures = buildAllFigures({ languageSweep, variantSweep, trajectories });

  it("produces the five standard figures in order", () => {
    expect(figures.map((f) => f.id)).toEqual([
      "figure1",
      "figure2",
      "figure3",
      "figure4",
      "figure5",
    ]);
  });

  it("series counts match the CSV group cardinalities", () => {
    const counts = figures.map((f) => f.series.length);
    expect(counts).toEqual([4, 4, 4, 4, 4]); // 4 language sizes, then 4 variants
  });

  it("language-size series are sorted numerically", () => {
    expect(figures[0]!.series.map((s) => s.label)).toEqual([
      "n=5",
      "n=10",
      "n=50",
      "n=100",
    ]);
    expect(figures[1]!.series.map((s) => s.label)).toEqual(figures[0]!.series.map((s) => s.label));
  });

  it("variant series are sorted lexicographically and consistent across figures", () => {
    const labels = figures[2]!.series.map((s) => s.label);
    expect(labels).toEqual([...labels].sort());
    expect(labels).toHaveLength(4);
    expect(figures[3]!.series.map((s) => s.label)).toEqual(labels);
    expect(figures[4]!.series.map((s) => s.label)).toEqual(labels);
  });

  it("every aggregate series covers the full threshold grid in order", () => {
    for (const figure of figures.slice(0, 4)) {
      for (const series of figure.series) {
        const xs = series.points.map((p) => p.x);
        expect(xs).toEqual([0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1]);
      }
    }
  });

  it("aggregate points carry spreads, trajectory points do not", () => {
    for (const figure of figures.slice(0, 4)) {
      for (const series of figure.series) {
        expect(series.points.every((p) => p.spread !== undefined)).toBe(true);
      }
    }
    for (const series of figures[4]!.series) {
      expect(series.points.every((p) => p.spread === undefined)).toBe(true);
    }
  });
});

describe("buildConvergenceFigure", () => {
  it("averages distinct counts across runs per sampled iteration", () => {
    const figure = buildConvergenceFigure(trajectories);
    const label = figure.series[0]!.label;
    const point = figure.series[0]!.points[0]!;
    const matching = trajectories.filter(
      (r) => r.variant === label && r.iteration === point.x,
    );
    const mean = matching.reduce((a, r) => a + r.distinct, 0) / matching.length;
    expect(point.y).toBeCloseTo(mean, 12);
  });

  it("points are sorted by iteration", () => {
    const figure = buildConvergenceFigure(trajectories);
    for (const series of figure.series) {
      const xs = series.points.map((p) => p.x);
      expect(xs).toEqual([...xs].sort((a, b) => a - b));
    }
  });

  it("carries the threshold into the title", () => {
    expect(buildConvergenceFigure(trajectories).title).toContain("0.7");
  });

  it("rejects mixed thresholds", () => {
    const mixed = [...trajectories, { ...trajectories[0]!, gamma: 0.3 }];
    expect(() => buildConvergenceFigure(mixed)).toThrowError(FigureDataError);
  });

  it("rejects empty input", () => {
    expect(() => buildConvergenceFigure([])).toThrowError(/no data rows/);
  });
});

describe("input validation", () => {
  it("language-size figures reject mixed variants", () => {
    expect(() => buildVaguenessFigure(variantSweep)).toThrowError(
      /operator\/selection/,
    );
  });

  it("variant figures reject mixed language sizes", () => {
    expect(() => buildPayoffFigure(languageSweep)).toThrowError(/language size/);
  });
});
