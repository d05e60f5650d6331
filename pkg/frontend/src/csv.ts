/**
 * Reader for the benchmark CSV that `lkt bench` writes.
 *
 * The format is strict: a fixed header, one row per (family, n, engine)
 * cell, no quoting anywhere. Splitting on commas is therefore exact.
 */

export interface BenchRow {
  family: string;
  n: number;
  engine: string;
  wallNanos: number;
  inputSize: number;
  outputSize: number;
  cutCountOut: number;
  status: string;
}

export const COLUMNS = [
  "family",
  "n",
  "engine",
  "wallNanos",
  "inputSize",
  "outputSize",
  "cutCountOut",
  "status",
] as const;

export function parseBenchCsv(text: string): BenchRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim() !== "");
  if (lines.length === 0) {
    throw new Error("no rows");
  }
  const header = lines[0].split(",").map((c) => c.trim());
  const missing = COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new Error(`missing columns: ${missing.join(", ")}`);
  }
  const at = new Map(COLUMNS.map((c) => [c, header.indexOf(c)]));
  const cell = (cells: string[], c: (typeof COLUMNS)[number]) => cells[at.get(c)!];
  const int = (cells: string[], c: (typeof COLUMNS)[number], line: number) => {
    const raw = cell(cells, c);
    const v = Number(raw);
    if (!Number.isFinite(v)) {
      throw new Error(`line ${line}: column ${c} is not a number: ${raw!}`);
    }
    return v;
  };

  const rows: BenchRow[] = [];
  lines.slice(1).forEach((line, i) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new Error(`line ${i + 2}: expected ${header.length} cells, got ${cells.length}`);
    }
    rows.push({
      family: cell(cells, "family"),
      n: int(cells, "n", i + 2),
      engine: cell(cells, "engine"),
      wallNanos: int(cells, "wallNanos", i + 2),
      inputSize: int(cells, "inputSize", i + 2),
      outputSize: int(cells, "outputSize", i + 2),
      cutCountOut: int(cells, "cutCountOut", i + 2),
      status: cell(cells, "status"),
    });
  });
  if (rows.length === 0) {
    throw new Error("no rows");
  }
  return rows;
}
