/**
 * Strict reader for the solver's CSV outputs.
 *
 * The files are plain comma-separated tables with a single header row,
 * LF newlines, no quoting and no embedded commas, so a split-based parser
 * is exact. Schema checks are by column name: a figure kind declares the
 * columns it renders and the header must contain them.
 */

export class SchemaMismatchError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaMismatchError";
  }
}

export interface Table {
  header: string[];
  /** column name -> numeric values (row-aligned) */
  columns: Map<string, number[]>;
  rowCount: number;
}

export function parseCsv(text: string, source = "<csv>"): Table {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaMismatchError(`${source}: empty file (no header row)`);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  if (header.some((h) => h.length === 0)) {
    throw new SchemaMismatchError(`${source}: blank column name in header`);
  }
  const columns = new Map<string, number[]>(header.map((h) => [h, []]));
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new SchemaMismatchError(
        `${source}: row ${i} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    for (let j = 0; j < header.length; j++) {
      const value = Number(cells[j]);
      columns.get(header[j])!.push(value);
    }
  }
  return { header, columns, rowCount: lines.length - 1 };
}

/** The numeric columns a figure kind needs, in render order. */
export function requireColumns(table: Table, names: string[], source = "<csv>"): number[][] {
  for (const name of names) {
    if (!table.columns.has(name)) {
      throw new SchemaMismatchError(
        `${source}: missing column '${name}' (header: ${table.header.join(", ")})`,
      );
    }
  }
  const picked = names.map((name) => table.columns.get(name)!);
  for (const name of names) {
    const values = table.columns.get(name)!;
    if (name !== "name" && values.some((v) => Number.isNaN(v))) {
      throw new SchemaMismatchError(`${source}: non-numeric cell in column '${name}'`);
    }
  }
  return picked;
}
