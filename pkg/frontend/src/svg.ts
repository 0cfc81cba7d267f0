/**
 * Dependency-free SVG line-chart renderer.
 *
 * Draws mean lines with optional symmetric error bars, axes with 1/2/5
 * ticks, a legend, and a zero baseline when the y domain crosses zero.
 * Colors follow series order (builders sort series deterministically),
 * and all coordinates are rounded, so identical input yields an
 * identical SVG string.
 */

import type { Figure, Series } from "./figures.js";

export interface RenderOptions {
  width?: number;
  height?: number;
}

/** Okabe-Ito palette: distinguishable under common color-vision deficiencies. */
export const PALETTE = [
  "#0072B2",
  "#D55E00",
  "#009E73",
  "#CC79A7",
  "#E69F00",
  "#56B4E9",
  "#F0E442",
  "#000000",
] as const;

const MARGIN = { top: 40, right: 24, bottom: 46, left: 62 };

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&apos;");
}

function fmt(value: number): string {
  return value.toFixed(2).replace(/\.?0+$/, "") || "0";
}

/** Human tick label without float noise (0.30000000000000004 -> "0.3"). */
function tickLabel(value: number): string {
  return String(Number(value.toPrecision(10)));
}

export function niceTicks(min: number, max: number, target = 6): number[] {
  if (!(max > min)) {
    return [min];
  }
  const rawStep = (max - min) / target;
  const magnitude = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const normalized = rawStep / magnitude;
  const step =
    (normalized <= 1 ? 1 : normalized <= 2 ? 2 : normalized <= 5 ? 5 : 10) * magnitude;
  const out: number[] = [];
  const start = Math.ceil(min / step - 1e-9) * step;
  for (let v = start; v <= max + step * 1e-9; v += step) {
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

interface Extent {
  min: number;
  max: number;
}

function dataExtents(series: Series[]): { x: Extent; y: Extent } {
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const s of series) {
    for (const p of s.points) {
      const spread = p.spread ?? 0;
      xMin = Math.min(xMin, p.x);
      xMax = Math.max(xMax, p.x);
      yMin = Math.min(yMin, p.y - spread);
      yMax = Math.max(yMax, p.y + spread);
    }
  }
  if (!Number.isFinite(xMin) || !Number.isFinite(yMin)) {
    throw new Error("cannot render a figure with no points");
  }
  // anchor the y axis at zero when the data sits on one side of it
  yMin = Math.min(yMin, 0);
  yMax = Math.max(yMax, 0);
  if (yMin === yMax) {
    yMax = yMin + 1;
  }
  if (xMin === xMax) {
    xMax = xMin + 1;
  }
  return { x: { min: xMin, max: xMax }, y: { min: yMin, max: yMax } };
}

export function renderFigure(figure: Figure, options: RenderOptions = {}): string {
  const width = options.width ?? 720;
  const height = options.height ?? 460;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  if (plotW <= 10 || plotH <= 10) {
    throw new Error(`figure size ${width}x${height} leaves no plot area`);
  }
  const { x, y } = dataExtents(figure.series);
  const sx = (v: number): number => MARGIN.left + ((v - x.min) / (x.max - x.min)) * plotW;
  const sy = (v: number): number =>
    MARGIN.top + plotH - ((v - y.min) / (y.max - y.min)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${fmt(width / 2)}" y="20" text-anchor="middle" font-size="15">` +
      `${escapeXml(figure.title)}</text>`,
  );

  // axes and ticks
  const axisColor = "#333333";
  const gridColor = "#dddddd";
  const x0 = MARGIN.left;
  const x1 = MARGIN.left + plotW;
  const yTop = MARGIN.top;
  const yBottom = MARGIN.top + plotH;
  for (const tick of niceTicks(y.min, y.max)) {
    const py = sy(tick);
    parts.push(
      `<line class="grid" x1="${fmt(x0)}" y1="${fmt(py)}" x2="${fmt(x1)}" ` +
        `y2="${fmt(py)}" stroke="${gridColor}"/>`,
    );
    parts.push(
      `<text class="tick" x="${fmt(x0 - 8)}" y="${fmt(py + 4)}" ` +
        `text-anchor="end">${tickLabel(tick)}</text>`,
    );
  }
  for (const tick of niceTicks(x.min, x.max)) {
    const px = sx(tick);
    parts.push(
      `<line class="tick-mark" x1="${fmt(px)}" y1="${fmt(yBottom)}" x2="${fmt(px)}" ` +
        `y2="${fmt(yBottom + 5)}" stroke="${axisColor}"/>`,
    );
    parts.push(
      `<text class="tick" x="${fmt(px)}" y="${fmt(yBottom + 18)}" ` +
        `text-anchor="middle">${tickLabel(tick)}</text>`,
    );
  }
  if (y.min < 0 && y.max > 0) {
    parts.push(
      `<line class="zero-line" x1="${fmt(x0)}" y1="${fmt(sy(0))}" x2="${fmt(x1)}" ` +
        `y2="${fmt(sy(0))}" stroke="#999999" stroke-dasharray="4 3"/>`,
    );
  }
  parts.push(
    `<line class="axis" x1="${fmt(x0)}" y1="${fmt(yTop)}" x2="${fmt(x0)}" ` +
      `y2="${fmt(yBottom)}" stroke="${axisColor}"/>`,
  );
  parts.push(
    `<line class="axis" x1="${fmt(x0)}" y1="${fmt(yBottom)}" x2="${fmt(x1)}" ` +
      `y2="${fmt(yBottom)}" stroke="${axisColor}"/>`,
  );
  parts.push(
    `<text x="${fmt(x0 + plotW / 2)}" y="${fmt(height - 8)}" text-anchor="middle">` +
      `${escapeXml(figure.xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${fmt(yTop + plotH / 2)}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${fmt(yTop + plotH / 2)})">${escapeXml(figure.yLabel)}</text>`,
  );

  // series: error bars under the mean lines
  figure.series.forEach((s, idx) => {
    const color = PALETTE[idx % PALETTE.length]!;
    for (const p of s.points) {
      if (p.spread !== undefined && p.spread > 0) {
        const px = sx(p.x);
        const lo = sy(p.y - p.spread);
        const hi = sy(p.y + p.spread);
        parts.push(
          `<line class="error-bar" x1="${fmt(px)}" y1="${fmt(lo)}" x2="${fmt(px)}" ` +
            `y2="${fmt(hi)}" stroke="${color}" stroke-opacity="0.55"/>`,
        );
        for (const end of [lo, hi]) {
          parts.push(
            `<line class="error-cap" x1="${fmt(px - 3)}" y1="${fmt(end)}" ` +
              `x2="${fmt(px + 3)}" y2="${fmt(end)}" stroke="${color}" stroke-opacity="0.55"/>`,
          );
        }
      }
    }
    const coords = s.points.map((p) => `${fmt(sx(p.x))},${fmt(sy(p.y))}`).join(" ");
    parts.push(
      `<polyline class="series-line" fill="none" stroke="${color}" stroke-width="1.8" ` +
        `points="${coords}"/>`,
    );
    for (const p of s.points) {
      parts.push(
        `<circle class="series-dot" cx="${fmt(sx(p.x))}" cy="${fmt(sy(p.y))}" r="2.4" ` +
          `fill="${color}"/>`,
      );
    }
  });

  // legend, top-right inside the plot
  const legendX = x1 - 10;
  figure.series.forEach((s, idx) => {
    const color = PALETTE[idx % PALETTE.length]!;
    const ly = yTop + 14 + idx * 16;
    parts.push(
      `<line class="legend-line" x1="${fmt(legendX - 150)}" y1="${fmt(ly - 4)}" ` +
        `x2="${fmt(legendX - 128)}" y2="${fmt(ly - 4)}" stroke="${color}" stroke-width="2.4"/>`,
    );
    parts.push(
      `<text class="legend-label" x="${fmt(legendX - 122)}" y="${fmt(ly)}">` +
        `${escapeXml(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
