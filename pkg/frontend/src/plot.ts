/**
 * Benchmark chart: one panel per family, runtime vs n, one line per
 * engine. The y-axis is logarithmic by default since the engines sit
 * orders of magnitude apart.
 *
 * Rows whose status is not "ok" carry no measurement (their wallNanos
 * is zero), so they are dropped before plotting.
 */

import { readFile, writeFile } from "node:fs/promises";
import { BenchRow, parseBenchCsv } from "./csv.js";

export interface PlotSpec {
  csvPath: string;
  outPath: string;
  families?: string[];
  engines?: string[];
  logY?: boolean; // default true
}

const PALETTE = ["#4361ee", "#e63946", "#2d6a4f", "#f77f00", "#9d4edd", "#666666"];

// Panel geometry. Two panels per grid row.
const PW = 340;
const PH = 230;
const ML = 62;
const MR = 14;
const MT = 30;
const MB = 40;
const GRID_COLS = 2;
const LEGEND_H = 26;

export function filterRows(
  rows: BenchRow[],
  families?: string[],
  engines?: string[],
): BenchRow[] {
  return rows.filter(
    (r) =>
      (!families || families.includes(r.family)) &&
      (!engines || engines.includes(r.engine)),
  );
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmtNs(ns: number): string {
  if (ns >= 1e9) return `${ns / 1e9}s`;
  if (ns >= 1e6) return `${ns / 1e6}ms`;
  if (ns >= 1e3) return `${ns / 1e3}us`;
  return `${ns}ns`;
}

function uniqueSorted<T>(xs: T[]): T[] {
  return [...new Set(xs)].sort();
}

/** Distinct values in first-appearance order, so panel order follows the CSV. */
function uniqueInOrder(xs: string[]): string[] {
  return [...new Set(xs)];
}

function linearTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 0.01; v += step) {
    ticks.push(v);
  }
  return ticks;
}

interface Scale {
  of: (v: number) => number;
  ticks: number[];
}

function yScale(values: number[], logY: boolean, y0: number, h: number): Scale {
  if (logY) {
    const lo = Math.floor(Math.log10(Math.min(...values)));
    const hi = Math.ceil(Math.log10(Math.max(...values)));
    const span = hi - lo || 1;
    const ticks: number[] = [];
    for (let d = lo; d <= hi; d++) ticks.push(Math.pow(10, d));
    return {
      of: (v) => y0 + h - ((Math.log10(v) - lo) / span) * h,
      ticks,
    };
  }
  const lo = 0;
  const hi = Math.max(...values) * 1.05 || 1;
  return {
    of: (v) => y0 + h - ((v - lo) / (hi - lo)) * h,
    ticks: linearTicks(lo, hi, 5),
  };
}

function panel(
  rows: BenchRow[],
  family: string,
  engines: string[],
  color: Map<string, string>,
  logY: boolean,
  px: number,
  py: number,
): string {
  const x0 = px + ML;
  const y0 = py + MT;
  const w = PW - ML - MR;
  const h = PH - MT - MB;

  const ns = uniqueSorted(rows.map((r) => r.n));
  const nMin = ns[0];
  const nMax = ns[ns.length - 1];
  const xOf = (n: number) => x0 + ((n - nMin) / (nMax - nMin || 1)) * w;
  const ys = yScale(rows.map((r) => r.wallNanos), logY, y0, h);

  let s = `<g class="panel" data-family="${esc(family)}">\n`;
  s += `<text x="${x0 + w / 2}" y="${py + 18}" text-anchor="middle" font-size="11" font-weight="600" fill="#222">${esc(family)}</text>\n`;

  for (const v of ys.ticks) {
    const y = ys.of(v).toFixed(1);
    s += `<line x1="${x0}" y1="${y}" x2="${x0 + w}" y2="${y}" stroke="#eee" stroke-width="0.6"/>\n`;
    s += `<text x="${x0 - 5}" y="${(ys.of(v) + 3).toFixed(1)}" text-anchor="end" font-size="8" fill="#666">${esc(fmtNs(v))}</text>\n`;
  }

  const xTicks = ns.length <= 9 ? ns : linearTicks(nMin, nMax, 8);
  for (const n of xTicks) {
    const x = xOf(n).toFixed(1);
    s += `<line x1="${x}" y1="${y0 + h}" x2="${x}" y2="${y0 + h + 3}" stroke="#333" stroke-width="0.5"/>\n`;
    s += `<text x="${x}" y="${y0 + h + 13}" text-anchor="middle" font-size="8" fill="#666">${n}</text>\n`;
  }
  s += `<text x="${x0 + w / 2}" y="${y0 + h + 26}" text-anchor="middle" font-size="9" fill="#444">n</text>\n`;

  s += `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y0 + h}" stroke="#333" stroke-width="0.7"/>\n`;
  s += `<line x1="${x0}" y1="${y0 + h}" x2="${x0 + w}" y2="${y0 + h}" stroke="#333" stroke-width="0.7"/>\n`;

  for (const engine of engines) {
    const mine = rows
      .filter((r) => r.engine === engine)
      .sort((a, b) => a.n - b.n);
    if (mine.length === 0) continue;
    const pts = mine
      .map((r) => `${xOf(r.n).toFixed(1)},${ys.of(r.wallNanos).toFixed(1)}`)
      .join(" ");
    const c = color.get(engine)!;
    s += `<polyline class="series" data-engine="${esc(engine)}" fill="none" stroke="${c}" stroke-width="1.4" points="${pts}"/>\n`;
    for (const r of mine) {
      s += `<circle cx="${xOf(r.n).toFixed(1)}" cy="${ys.of(r.wallNanos).toFixed(1)}" r="1.8" fill="${c}"/>\n`;
    }
  }
  s += `</g>\n`;
  return s;
}

/**
 * Build the multi-panel SVG. Throws "no rows" when nothing survives
 * the status filter; callers applying family or engine filters first
 * hit the same error on an over-narrow selection.
 */
export function buildChart(rows: BenchRow[], logY: boolean = true): string {
  const ok = rows.filter((r) => r.status === "ok");
  if (ok.length === 0) {
    throw new Error("no rows");
  }
  const families = uniqueInOrder(ok.map((r) => r.family));
  const engines = uniqueSorted(ok.map((r) => r.engine));
  const color = new Map(engines.map((e, i) => [e, PALETTE[i % PALETTE.length]]));

  const cols = Math.min(GRID_COLS, families.length);
  const gridRows = Math.ceil(families.length / cols);
  const W = cols * PW;
  const H = LEGEND_H + gridRows * PH;

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" data-scale="${logY ? "log" : "linear"}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;

  let lx = 12;
  for (const engine of engines) {
    const c = color.get(engine)!;
    s += `<line x1="${lx}" y1="${LEGEND_H / 2}" x2="${lx + 16}" y2="${LEGEND_H / 2}" stroke="${c}" stroke-width="1.4"/>\n`;
    s += `<text x="${lx + 20}" y="${LEGEND_H / 2 + 3}" font-size="9" fill="#444">${esc(engine)}</text>\n`;
    lx += 26 + engine.length * 5.5;
  }
  s += `<text x="${W - 12}" y="${LEGEND_H / 2 + 3}" text-anchor="end" font-size="9" fill="#888">wall time, ${logY ? "log" : "linear"} scale</text>\n`;

  families.forEach((family, i) => {
    const px = (i % cols) * PW;
    const py = LEGEND_H + Math.floor(i / cols) * PH;
    s += panel(ok.filter((r) => r.family === family), family, engines, color, logY, px, py);
  });

  s += `</svg>\n`;
  return s;
}

export async function render(spec: PlotSpec): Promise<string> {
  const text = await readFile(spec.csvPath, "utf-8");
  const rows = filterRows(parseBenchCsv(text), spec.families, spec.engines);
  const svg = buildChart(rows, spec.logY ?? true);
  await writeFile(spec.outPath, svg);
  return svg;
}
