/**
 * Minimal CSV reading for the simulator's outputs. Values are plain
 * (unquoted) numbers and enum-like strings, so a split-on-comma parser is
 * sufficient; headers are validated against the expected schema and
 * missing columns are reported by name.
 */

import { readFileSync } from "fs";

export interface Table {
  columns: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  for (const row of rows) {
    if (row.length !== columns.length) {
      throw new Error(`ragged CSV row: expected ${columns.length} fields, got ${row.length}`);
    }
  }
  return { columns, rows };
}

export function requireColumns(table: Table, expected: readonly string[]): void {
  const missing = expected.filter((name) => !table.columns.includes(name));
  if (missing.length > 0) {
    throw new Error(`missing column(s): ${missing.join(", ")}`);
  }
}

export function numberColumn(table: Table, name: string): number[] {
  const index = table.columns.indexOf(name);
  if (index < 0) {
    throw new Error(`missing column(s): ${name}`);
  }
  return table.rows.map((row, i) => {
    const value = Number(row[index]);
    if (Number.isNaN(value) && row[index] !== "nan") {
      throw new Error(`non-numeric value ${JSON.stringify(row[index])} in ${name} row ${i}`);
    }
    return value;
  });
}

export function stringColumn(table: Table, name: string): string[] {
  const index = table.columns.indexOf(name);
  if (index < 0) {
    throw new Error(`missing column(s): ${name}`);
  }
  return table.rows.map((row) => row[index]);
}

export function readCsvFile(path: string): Table {
  return parseCsv(readFileSync(path, "utf-8"));
}
