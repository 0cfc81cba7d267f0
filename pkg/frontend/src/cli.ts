#!/usr/bin/env node
/**
 * Render the five standard result figures from sweep CSV files.
 *
 * Usage:
 *   kleenesim-figures --results-dir DIR [--output-dir DIR] [--width N] [--height N]
 *   kleenesim-figures --manifest FILE.json [--output-dir DIR] [--width N] [--height N]
 *
 * --results-dir expects the files written by the canned sweeps:
 *   fig1-2_aggregate.csv, fig3-4_aggregate.csv, fig5_trajectories.csv.
 * --manifest points at a JSON file naming the three inputs explicitly:
 *   {"languageSweep": "...", "variantSweep": "...", "trajectories": "...",
 *    "outputDir": "..."} (paths resolved relative to the manifest file).
 *
 * Exit status: 0 on success, 2 on usage/config errors, 1 on IO or data
 * errors.
 */

import { readFileSync, writeFileSync, mkdirSync } from "node:fs";
import { dirname, join, resolve } from "node:path";
import { pathToFileURL } from "node:url";

import { parseAggregate, parseTrajectories } from "./data.js";
import { buildAllFigures, type FigureInputs } from "./figures.js";
import { renderFigure, type RenderOptions } from "./svg.js";

export class UsageError extends Error {}

interface CliOptions {
  resultsDir?: string;
  manifest?: string;
  outputDir?: string;
  width?: number;
  height?: number;
}

const USAGE =
  "usage: kleenesim-figures (--results-dir DIR | --manifest FILE) " +
  "[--output-dir DIR] [--width N] [--height N]";

function parseArgs(argv: string[]): CliOptions {
  const out: CliOptions = {};
  for (let i = 0; i < argv.length; i += 1) {
    const flag = argv[i]!;
    const take = (): string => {
      const value = argv[i + 1];
      if (value === undefined) {
        throw new UsageError(`${flag} requires a value`);
      }
      i += 1;
      return value;
    };
    switch (flag) {
      case "--results-dir":
        out.resultsDir = take();
        break;
      case "--manifest":
        out.manifest = take();
        break;
      case "--output-dir":
        out.outputDir = take();
        break;
      case "--width":
      case "--height": {
        const value = Number(take());
        if (!Number.isInteger(value) || value <= 0) {
          throw new UsageError(`${flag} must be a positive integer`);
        }
        if (flag === "--width") {
          out.width = value;
        } else {
          out.height = value;
        }
        break;
      }
      case "--help":
      case "-h":
        throw new UsageError(USAGE);
      default:
        throw new UsageError(`unknown flag ${flag}\n${USAGE}`);
    }
  }
  if ((out.resultsDir === undefined) === (out.manifest === undefined)) {
    throw new UsageError(`exactly one of --results-dir or --manifest is required\n${USAGE}`);
  }
  return out;
}

interface ResolvedInputs {
  paths: { languageSweep: string; variantSweep: string; trajectories: string };
  outputDir: string;
}

function resolveInputs(options: CliOptions): ResolvedInputs {
  if (options.resultsDir !== undefined) {
    const dir = options.resultsDir;
    return {
      paths: {
        languageSweep: join(dir, "fig1-2_aggregate.csv"),
        variantSweep: join(dir, "fig3-4_aggregate.csv"),
        trajectories: join(dir, "fig5_trajectories.csv"),
      },
      outputDir: options.outputDir ?? dir,
    };
  }
  const manifestPath = options.manifest!;
  let manifest: Record<string, unknown>;
  try {
    manifest = JSON.parse(readFileSync(manifestPath, "utf8")) as Record<string, unknown>;
  } catch (err) {
    throw new UsageError(`cannot read manifest ${manifestPath}: ${(err as Error).message}`);
  }
  const base = dirname(resolve(manifestPath));
  const pick = (key: string): string => {
    const value = manifest[key];
    if (typeof value !== "string" || value === "") {
      throw new UsageError(`manifest ${manifestPath}: missing string field "${key}"`);
    }
    return resolve(base, value);
  };
  const outputDir =
    options.outputDir ??
    (typeof manifest["outputDir"] === "string" ? resolve(base, manifest["outputDir"]) : base);
  return {
    paths: {
      languageSweep: pick("languageSweep"),
      variantSweep: pick("variantSweep"),
      trajectories: pick("trajectories"),
    },
    outputDir,
  };
}

export function loadInputs(paths: ResolvedInputs["paths"]): FigureInputs {
  return {
    languageSweep: parseAggregate(readFileSync(paths.languageSweep, "utf8")),
    variantSweep: parseAggregate(readFileSync(paths.variantSweep, "utf8")),
    trajectories: parseTrajectories(readFileSync(paths.trajectories, "utf8")),
  };
}

export function main(argv: string[], log: (line: string) => void = console.log): number {
  let options: CliOptions;
  try {
    options = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(err.message);
      return 2;
    }
    throw err;
  }
  try {
    const resolved = resolveInputs(options);
    const inputs = loadInputs(resolved.paths);
    const figures = buildAllFigures(inputs);
    const renderOptions: RenderOptions = { width: options.width, height: options.height };
    mkdirSync(resolved.outputDir, { recursive: true });
    for (const figure of figures) {
      const path = join(resolved.outputDir, `${figure.id}.svg`);
      writeFileSync(path, renderFigure(figure, renderOptions));
      log(`wrote ${path} (${figure.series.length} series)`);
    }
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(err.message);
      return 2;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const isDirectInvocation =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(resolve(process.argv[1])).href;
if (isDirectInvocation) {
  process.exit(main(process.argv.slice(2)));
}
