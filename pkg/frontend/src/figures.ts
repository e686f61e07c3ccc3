import { resolve } from "path";

import { SchemaError, loadCsv, numericColumn, numericRows } from "./csv.js";
import {
  Scale,
  axes,
  colormap,
  document,
  fmt,
  linearScale,
  logScale,
  markers,
  plotArea,
  polyline,
} from "./svg.js";
import { FigureSpec, RenderResult } from "./types.js";

function resolveInput(baseDir: string, path: string): string {
  return resolve(baseDir, path);
}

export function render(spec: FigureSpec, baseDir: string): RenderResult {
  switch (spec.kind) {
    case "scaling":
      return renderScaling(spec, baseDir);
    case "husimi":
      return renderHusimi(spec, baseDir);
    case "line":
      return renderLine(spec, baseDir);
    case "heatmap":
      return renderHeatmap(spec, baseDir);
  }
}

/** Log-log squeezing floor vs particle number with the steady-state-law overlay. */
function renderScaling(spec: FigureSpec, baseDir: string): RenderResult {
  const path = resolveInput(baseDir, spec.inputs[0].path);
  const table = loadCsv(path, ["n", "xi2_inf_numeric", "xi2_inf_formula", "z"]);
  const rows = numericRows(table, ["n", "xi2_inf_numeric", "xi2_inf_formula"], path);
  if (rows.length === 0) throw new SchemaError(`no complete rows in ${path}`);
  rows.sort((a, b) => a.n - b.n);

  const ns = rows.map((r) => r.n);
  const numeric = rows.map((r) => r.xi2_inf_numeric);
  const formula = rows.map((r) => r.xi2_inf_formula);
  let residual = 0;
  for (let i = 0; i < rows.length; i++) {
    residual = Math.max(residual, Math.abs(numeric[i] / formula[i] - 1));
  }

  const a = plotArea();
  const ymin = Math.min(...numeric, ...formula);
  const ymax = Math.max(...numeric, ...formula);
  const xs = logScale([ns[0], ns[ns.length - 1]], [a.x0, a.x1]);
  const ys = logScale([ymin / 1.5, ymax * 1.5], [a.y0, a.y1]);

  const toPts = (vals: number[]): [number, number][] =>
    vals.map((v, i) => [xs(ns[i]), ys(v)]);
  const body = [
    axes(xs, ys, spec.xLabel ?? "N", spec.yLabel ?? "squeezing floor", spec.title ?? ""),
    polyline(toPts(formula), "#c22", "6,3"),
    polyline(toPts(numeric), "#235a97"),
    markers(toPts(numeric), "#235a97"),
    `<text x="${fmt(a.x1 - 6)}" y="${fmt(a.y1 + 16)}" font-size="11" text-anchor="end" fill="#c22">overlay: steady-state law (max residual ${(residual * 100).toFixed(2)}%)</text>`,
  ].join("\n");
  return { svg: document(body), overlayResidual: residual };
}

/** Phase-space map: normalized Husimi density on (phi, theta) axes. */
function renderHusimi(spec: FigureSpec, baseDir: string): RenderResult {
  const path = resolveInput(baseDir, spec.inputs[0].path);
  const table = loadCsv(path, ["theta", "phi", "q_raw", "q_normalized"]);
  const rows = numericRows(table, ["theta", "phi", "q_normalized"], path);
  const thetas = [...new Set(rows.map((r) => r.theta))].sort((x, y) => x - y);
  const phis = [...new Set(rows.map((r) => r.phi))].sort((x, y) => x - y);
  const value = new Map<string, number>();
  for (const r of rows) value.set(`${r.theta}|${r.phi}`, r.q_normalized);
  const vmax = Math.max(...rows.map((r) => r.q_normalized));

  const a = plotArea();
  const xs = linearScale([0, 2 * Math.PI], [a.x0, a.x1]);
  const ys = linearScale([0, Math.PI], [a.y0, a.y1]);
  const cells: string[] = [];
  const dphi = phis.length > 1 ? phis[1] - phis[0] : 2 * Math.PI;
  const dtheta = thetas.length > 1 ? thetas[1] - thetas[0] : Math.PI;
  for (const th of thetas) {
    for (const ph of phis) {
      const v = value.get(`${th}|${ph}`);
      if (v === undefined) continue;
      const x = xs(ph);
      const y = ys(th + dtheta);
      cells.push(
        `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(xs(ph + dphi) - x)}" height="${fmt(
          ys(th) - y,
        )}" fill="${colormap(vmax > 0 ? v / vmax : 0)}"/>`,
      );
    }
  }
  const body = [
    cells.join("\n"),
    axes(xs, ys, spec.xLabel ?? "phi", spec.yLabel ?? "theta", spec.title ?? ""),
  ].join("\n");
  return { svg: document(body) };
}

/** Simple x-y curve, e.g. bound-state residue against coupling strength. */
function renderLine(spec: FigureSpec, baseDir: string): RenderResult {
  const xCol = spec.xColumn ?? "eta";
  const yCol = spec.yColumn ?? "z";
  const path = resolveInput(baseDir, spec.inputs[0].path);
  const table = loadCsv(path, [xCol, yCol]);
  const rows = numericRows(table, [xCol, yCol], path);
  if (rows.length === 0) throw new SchemaError(`no complete rows in ${path}`);
  rows.sort((p, q) => p[xCol] - q[xCol]);

  const a = plotArea();
  const xvals = rows.map((r) => r[xCol]);
  const yvals = rows.map((r) => r[yCol]);
  const xs = linearScale([Math.min(...xvals), Math.max(...xvals)], [a.x0, a.x1]);
  const ylo = Math.min(0, ...yvals);
  const ys = linearScale([ylo, Math.max(...yvals) * 1.05], [a.y0, a.y1]);
  const pts: [number, number][] = rows.map((r) => [xs(r[xCol]), ys(r[yCol])]);
  const body = [
    axes(xs, ys, spec.xLabel ?? xCol, spec.yLabel ?? yCol, spec.title ?? ""),
    polyline(pts, "#235a97"),
    markers(pts, "#235a97"),
  ].join("\n");
  return { svg: document(body) };
}

/** Stacked-run heatmap: one labeled CSV per row, a value column over x. */
function renderHeatmap(spec: FigureSpec, baseDir: string): RenderResult {
  const xCol = spec.xColumn ?? "t";
  const vCol = spec.valueColumn ?? "xi2";
  const runs = spec.inputs.map((input) => {
    if (input.label === undefined) {
      throw new SchemaError(`heatmap input ${input.path} needs a numeric label`);
    }
    const path = resolveInput(baseDir, input.path);
    const table = loadCsv(path, [xCol, vCol]);
    return {
      label: input.label,
      x: numericColumn(table, xCol, path),
      v: numericColumn(table, vCol, path),
    };
  });
  runs.sort((p, q) => p.label - q.label);
  const nCols = 200; // subsample long time series to readable cell counts
  const xmax = Math.max(...runs.map((r) => r.x[r.x.length - 1]));
  const vmin = Math.min(...runs.map((r) => Math.min(...r.v)));
  const vmax = Math.max(...runs.map((r) => Math.max(...r.v)));

  const a = plotArea();
  const xs = linearScale([0, xmax], [a.x0, a.x1]);
  const labels = runs.map((r) => r.label);
  const dl = labels.length > 1 ? labels[1] - labels[0] : 1;
  const ys = linearScale([labels[0] - dl / 2, labels[labels.length - 1] + dl / 2], [a.y0, a.y1]);
  const cells: string[] = [];
  for (const run of runs) {
    const yTop = ys(run.label + dl / 2);
    const h = ys(run.label - dl / 2) - yTop;
    for (let c = 0; c < nCols; c++) {
      const idx = Math.min(run.x.length - 1, Math.round((c / (nCols - 1)) * (run.x.length - 1)));
      const x = xs((c / nCols) * xmax);
      const w = xs(((c + 1) / nCols) * xmax) - x;
      const norm = vmax > vmin ? (run.v[idx] - vmin) / (vmax - vmin) : 0;
      cells.push(
        `<rect x="${fmt(x)}" y="${fmt(yTop)}" width="${fmt(w)}" height="${fmt(h)}" fill="${colormap(norm)}"/>`,
      );
    }
  }
  const body = [
    cells.join("\n"),
    axes(xs, ys, spec.xLabel ?? xCol, spec.yLabel ?? "coupling", spec.title ?? ""),
  ].join("\n");
  return { svg: document(body) };
}
