import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseAggregate, parseTrajectories } from "../src/data.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const read = (name: string): string => readFileSync(join(FIXTURES, name), "utf8");

describe("parseAggregate", () => {
  it("reads the language-size sweep fixture", () => {
    const rows = parseAggregate(read("fig1-2_aggregate.csv"));
    expect(rows).toHaveLength(44); // 4 language sizes x 11 thresholds
    expect(new Set(rows.map((r) => r.n))).toEqual(new Set([5, 10, 50, 100]));
    for (const row of rows) {
      expect(row.variant).toBe("three-valued");
      expect(row.gamma).toBeGreaterThanOrEqual(0);
      expect(row.gamma).toBeLessThanOrEqual(1);
      expect(row.vaguenessMean).toBeGreaterThanOrEqual(0);
      expect(row.distinctMean).toBeGreaterThanOrEqual(1);
      expect(row.runs).toBeGreaterThanOrEqual(1);
    }
  });

  it("reads the four-variant sweep fixture", () => {
    const rows = parseAggregate(read("fig3-4_aggregate.csv"));
    const variants = new Set(rows.map((r) => `${r.variant}/${r.selection}`));
    expect(variants.size).toBe(4);
    expect(new Set(rows.map((r) => r.n))).toEqual(new Set([5]));
  });

  it("rejects a wrong header", () => {
    expect(() => parseAggregate("a,b\n1,2\n")).toThrowError(/header mismatch/);
  });

  it("rejects non-numeric numeric fields with position info", () => {
    const good = read("fig1-2_aggregate.csv").split("\n");
    const broken = [good[0], good[1]!.replace(/^three-valued,([^,]*),([^,]*),5/, "three-valued,$1,$2,five")]
      .join("\n");
    expect(() => parseAggregate(broken)).toThrowError(/line 2.*column n/);
  });
});

describe("parseTrajectories", () => {
  it("reads the trajectory fixture", () => {
    const rows = parseTrajectories(read("fig5_trajectories.csv"));
    expect(rows.length).toBeGreaterThan(0);
    const variants = new Set(rows.map((r) => r.variant));
    expect(variants.size).toBe(4);
    for (const row of rows) {
      expect(row.gamma).toBe(0.7);
      expect(Number.isInteger(row.iteration)).toBe(true);
      expect(row.distinct).toBeGreaterThanOrEqual(1);
    }
  });

  it("rejects an aggregate file passed as trajectories", () => {
    expect(() => parseTrajectories(read("fig1-2_aggregate.csv"))).toThrowError(
      /trajectory header mismatch/,
    );
  });
});
