/**
 * Minimal strict CSV reader for the simulator's output files.
 *
 * Supports RFC-4180 quoting ("" escapes inside quoted fields) and both
 * LF and CRLF line endings.  Every data row must have exactly as many
 * fields as the header; violations raise with a 1-based line number.
 */

export interface Table {
  header: string[];
  rows: string[][];
}

export class CsvError extends Error {
  constructor(message: string, readonly line?: number) {
    super(line === undefined ? message : `line ${line}: ${message}`);
    this.name = "CsvError";
  }
}

function splitLine(text: string, line: number): string[] {
  const fields: string[] = [];
  let field = "";
  let quoted = false;
  let i = 0;
  while (i < text.length) {
    const ch = text[i];
    if (quoted) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
        i += 1;
        continue;
      }
      field += ch;
      i += 1;
      continue;
    }
    if (ch === '"') {
      if (field.length > 0) {
        throw new CsvError('unexpected quote inside unquoted field', line);
      }
      quoted = true;
      i += 1;
      continue;
    }
    if (ch === ",") {
      fields.push(field);
      field = "";
      i += 1;
      continue;
    }
    field += ch;
    i += 1;
  }
  if (quoted) {
    throw new CsvError("unterminated quoted field", line);
  }
  fields.push(field);
  return fields;
}

export function parseCsv(text: string): Table {
  const lines = text.split("\n").map((l) => (l.endsWith("\r") ? l.slice(0, -1) : l));
  while (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    throw new CsvError("empty CSV input");
  }
  const header = splitLine(lines[0]!, 1);
  const rows: string[][] = [];
  for (let k = 1; k < lines.length; k += 1) {
    const row = splitLine(lines[k]!, k + 1);
    if (row.length !== header.length) {
      throw new CsvError(
        `expected ${header.length} fields, found ${row.length}`,
        k + 1,
      );
    }
    rows.push(row);
  }
  return { header, rows };
}
