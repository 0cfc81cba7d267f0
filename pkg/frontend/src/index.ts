export { parseCsv, CsvError, type Table } from "./csv.js";
export {
  parseAggregate,
  parseTrajectories,
  AGGREGATE_HEADER,
  TRAJECTORY_HEADER,
  type AggregateRow,
  type TrajectoryRow,
} from "./data.js";
export {
  buildAllFigures,
  buildVaguenessFigure,
  buildDistinctByLanguageFigure,
  buildPayoffFigure,
  buildDistinctByVariantFigure,
  buildConvergenceFigure,
  FigureDataError,
  type Figure,
  type FigureInputs,
  type Point,
  type Series,
} from "./figures.js";
export { renderFigure, niceTicks, escapeXml, PALETTE, type RenderOptions } from "./svg.js";
export { main } from "./cli.js";
