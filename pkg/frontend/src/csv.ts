import { readFileSync } from "fs";
import Papa from "papaparse";

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

/** Load a CSV and fail loudly (naming the column) if required ones are missing. */
export function loadCsv(path: string, required: string[]): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch {
    throw new SchemaError(`cannot read input CSV: ${path}`);
  }
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`malformed CSV ${path}: ${parsed.errors[0].message}`);
  }
  const columns = parsed.meta.fields ?? [];
  for (const col of required) {
    if (!columns.includes(col)) {
      throw new SchemaError(`missing column "${col}" in ${path}`);
    }
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`empty CSV: ${path}`);
  }
  return { columns, rows: parsed.data };
}

/** Numeric column; blank entries are dropped together with their row index. */
export function numericColumn(table: Table, name: string, path: string): number[] {
  return table.rows
    .map((row) => row[name])
    .filter((v) => v !== "" && v !== undefined)
    .map((v) => {
      const x = Number(v);
      if (!Number.isFinite(x)) {
        throw new SchemaError(`non-numeric value "${v}" in column "${name}" of ${path}`);
      }
      return x;
    });
}

/** Rows where every listed column is non-blank, parsed as numbers. */
export function numericRows(
  table: Table,
  names: string[],
  path: string,
): Record<string, number>[] {
  const out: Record<string, number>[] = [];
  for (const row of table.rows) {
    if (names.some((n) => row[n] === "" || row[n] === undefined)) continue;
    const rec: Record<string, number> = {};
    for (const n of names) {
      const x = Number(row[n]);
      if (!Number.isFinite(x)) {
        throw new SchemaError(`non-numeric value "${row[n]}" in column "${n}" of ${path}`);
      }
      rec[n] = x;
    }
    out.push(rec);
  }
  return out;
}
