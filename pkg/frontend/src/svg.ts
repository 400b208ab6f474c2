/**
 * Tiny deterministic SVG line-chart builder: axes, ticks, polylines,
 * scatter markers and a legend. String assembly only, no DOM.
 */

export interface Series {
  x: number[];
  y: number[];
  color: string;
  label?: string;
  dash?: string; // stroke-dasharray, e.g. "6,4" for the evader traces
  width?: number;
  markers?: boolean;
}

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
  legend?: boolean;
  equalAspect?: boolean;
}

const MARGIN = { top: 42, right: 20, bottom: 46, left: 64 };

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (Number.isFinite(v)) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (!Number.isFinite(lo)) {
    throw new Error("no finite data to plot");
  }
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  return [lo, hi];
}

function ticks(lo: number, hi: number, n = 6): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= n) ?? 10 * step;
  const out: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12 * span; v += chosen) {
    out.push(v);
  }
  return out;
}

function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 10000 || a < 0.01) return v.toExponential(1);
  return String(Math.round(v * 1000) / 1000);
}

export function renderChart(series: Series[], options: ChartOptions): string {
  const width = options.width ?? 760;
  const height = options.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  let [xLo, xHi] = extent(series.flatMap((s) => s.x));
  let [yLo, yHi] = extent(series.flatMap((s) => s.y));
  if (options.equalAspect) {
    const xSpan = xHi - xLo;
    const ySpan = yHi - yLo;
    const scale = Math.max(xSpan / plotW, ySpan / plotH);
    const xPad = (scale * plotW - xSpan) / 2;
    const yPad = (scale * plotH - ySpan) / 2;
    xLo -= xPad; xHi += xPad;
    yLo -= yPad; yHi += yPad;
  }

  const sx = (v: number) => MARGIN.left + ((v - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number) => MARGIN.top + plotH - ((v - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="20" text-anchor="middle" font-size="15">${options.title}</text>`,
  );

  for (const tx of ticks(xLo, xHi)) {
    const px = sx(tx);
    parts.push(`<line x1="${px.toFixed(1)}" y1="${MARGIN.top}" x2="${px.toFixed(1)}" ` +
      `y2="${MARGIN.top + plotH}" stroke="#ddd"/>`);
    parts.push(`<text x="${px.toFixed(1)}" y="${MARGIN.top + plotH + 16}" ` +
      `text-anchor="middle">${fmt(tx)}</text>`);
  }
  for (const ty of ticks(yLo, yHi)) {
    const py = sy(ty);
    parts.push(`<line x1="${MARGIN.left}" y1="${py.toFixed(1)}" ` +
      `x2="${MARGIN.left + plotW}" y2="${py.toFixed(1)}" stroke="#ddd"/>`);
    parts.push(`<text x="${MARGIN.left - 6}" y="${py.toFixed(1)}" text-anchor="end" ` +
      `dominant-baseline="middle">${fmt(ty)}</text>`);
  }
  parts.push(`<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
    `fill="none" stroke="#444"/>`);
  parts.push(`<text x="${MARGIN.left + plotW / 2}" y="${height - 8}" ` +
    `text-anchor="middle">${options.xLabel}</text>`);
  parts.push(`<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
    `transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${options.yLabel}</text>`);

  for (const s of series) {
    if (s.x.length !== s.y.length) {
      throw new Error("series x/y length mismatch");
    }
    const points = s.x
      .map((x, i) => [x, s.y[i]])
      .filter(([x, y]) => Number.isFinite(x) && Number.isFinite(y))
      .map(([x, y]) => `${sx(x).toFixed(2)},${sy(y).toFixed(2)}`);
    if (points.length === 0) continue;
    if (s.markers) {
      for (const p of points) {
        const [cx, cy] = p.split(",");
        parts.push(`<circle cx="${cx}" cy="${cy}" r="3.2" fill="${s.color}"/>`);
      }
    } else {
      const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
      parts.push(`<polyline points="${points.join(" ")}" fill="none" ` +
        `stroke="${s.color}" stroke-width="${s.width ?? 1.6}"${dash}/>`);
    }
  }

  if (options.legend ?? true) {
    let ly = MARGIN.top + 8;
    for (const s of series) {
      if (!s.label) continue;
      const lx = MARGIN.left + plotW - 150;
      const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
      parts.push(`<line x1="${lx}" y1="${ly}" x2="${lx + 26}" y2="${ly}" ` +
        `stroke="${s.color}" stroke-width="2"${dash}/>`);
      parts.push(`<text x="${lx + 32}" y="${ly + 4}">${s.label}</text>`);
      ly += 16;
    }
  }

  parts.push("</svg>");
  return parts.join("\n");
}
