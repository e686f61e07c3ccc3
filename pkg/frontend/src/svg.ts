/** Minimal deterministic SVG toolkit: fixed-precision numbers, no randomness. */

export const WIDTH = 640;
export const HEIGHT = 480;
export const MARGIN = { left: 70, right: 24, top: 36, bottom: 52 };

export function fmt(x: number): string {
  // fixed precision keeps output byte-stable across runs
  return Object.is(x, -0) ? "0.00" : x.toFixed(2);
}

export interface Scale {
  (x: number): number;
  ticks: number[];
  tickLabel(x: number): string;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((x: number) => r0 + ((x - d0) / span) * (r1 - r0)) as Scale;
  fn.ticks = niceTicks(d0, d1, 6);
  fn.tickLabel = (x: number) => trimNumber(x);
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const l0 = Math.log10(domain[0]);
  const l1 = Math.log10(domain[1]);
  const [r0, r1] = range;
  const span = l1 - l0 || 1;
  const fn = ((x: number) => r0 + ((Math.log10(x) - l0) / span) * (r1 - r0)) as Scale;
  const ticks: number[] = [];
  for (let p = Math.ceil(l0 - 1e-9); p <= Math.floor(l1 + 1e-9); p++) {
    ticks.push(Math.pow(10, p));
  }
  fn.ticks = ticks.length >= 2 ? ticks : [domain[0], domain[1]];
  fn.tickLabel = (x: number) => {
    const p = Math.log10(x);
    return Number.isInteger(p) ? `1e${p}` : trimNumber(x);
  };
  return fn;
}

function niceTicks(lo: number, hi: number, n: number): number[] {
  const span = hi - lo || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const err = span / (n * step);
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const start = Math.ceil(lo / s) * s;
  const ticks: number[] = [];
  for (let x = start; x <= hi + 1e-12 * span; x += s) ticks.push(x);
  return ticks;
}

function trimNumber(x: number): string {
  if (x === 0) return "0";
  const ax = Math.abs(x);
  if (ax >= 1e4 || ax < 1e-3) return x.toExponential(1).replace("+", "");
  return String(Number(x.toPrecision(4)));
}

/** Blue-to-yellow sequential colormap over fixed anchor stops. */
const STOPS: [number, number, number][] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

export function colormap(v: number): string {
  const x = Math.min(1, Math.max(0, v)) * (STOPS.length - 1);
  const i = Math.min(STOPS.length - 2, Math.floor(x));
  const f = x - i;
  const c = STOPS[i].map((a, k) => Math.round(a + f * (STOPS[i + 1][k] - a)));
  return `rgb(${c[0]},${c[1]},${c[2]})`;
}

export function plotArea(): { x0: number; x1: number; y0: number; y1: number } {
  return {
    x0: MARGIN.left,
    x1: WIDTH - MARGIN.right,
    y0: HEIGHT - MARGIN.bottom,
    y1: MARGIN.top,
  };
}

export function axes(xs: Scale, ys: Scale, xLabel: string, yLabel: string, title: string): string {
  const a = plotArea();
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(a.x0)}" y="${fmt(a.y1)}" width="${fmt(a.x1 - a.x0)}" height="${fmt(
      a.y0 - a.y1,
    )}" fill="none" stroke="black" stroke-width="1"/>`,
  );
  for (const t of xs.ticks) {
    const px = xs(t);
    if (px < a.x0 - 0.5 || px > a.x1 + 0.5) continue;
    parts.push(`<line x1="${fmt(px)}" y1="${fmt(a.y0)}" x2="${fmt(px)}" y2="${fmt(a.y0 + 5)}" stroke="black"/>`);
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(a.y0 + 18)}" font-size="11" text-anchor="middle">${xs.tickLabel(t)}</text>`,
    );
  }
  for (const t of ys.ticks) {
    const py = ys(t);
    if (py < a.y1 - 0.5 || py > a.y0 + 0.5) continue;
    parts.push(`<line x1="${fmt(a.x0 - 5)}" y1="${fmt(py)}" x2="${fmt(a.x0)}" y2="${fmt(py)}" stroke="black"/>`);
    parts.push(
      `<text x="${fmt(a.x0 - 8)}" y="${fmt(py + 4)}" font-size="11" text-anchor="end">${ys.tickLabel(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt((a.x0 + a.x1) / 2)}" y="${fmt(HEIGHT - 10)}" font-size="13" text-anchor="middle">${xLabel}</text>`,
  );
  parts.push(
    `<text x="18" y="${fmt((a.y0 + a.y1) / 2)}" font-size="13" text-anchor="middle" transform="rotate(-90 18 ${fmt(
      (a.y0 + a.y1) / 2,
    )})">${yLabel}</text>`,
  );
  if (title) {
    parts.push(
      `<text x="${fmt((a.x0 + a.x1) / 2)}" y="22" font-size="14" text-anchor="middle">${title}</text>`,
    );
  }
  return parts.join("\n");
}

export function polyline(points: [number, number][], stroke: string, dash = ""): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
  return `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="1.5"${dashAttr}/>`;
}

export function markers(points: [number, number][], fill: string): string {
  return points
    .map(([x, y]) => `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="3" fill="${fill}"/>`)
    .join("\n");
}

export function document(body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica,Arial,sans-serif">\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n${body}\n</svg>\n`
  );
}
