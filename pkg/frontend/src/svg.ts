/**
 * Minimal deterministic SVG scene builder: fixed canvas, linear or log10
 * axes with tick labels, circle markers, polylines and dashed guide lines.
 * No timestamps or generator metadata are embedded, so repeated renders of
 * the same data are byte-identical.
 */

export const WIDTH = 640;
export const HEIGHT = 480;
const MARGIN = { left: 72, right: 24, top: 28, bottom: 56 };

export type Scale = "linear" | "log";

export interface Series {
  x: number[];
  y: number[];
  marker?: boolean;
  line?: boolean;
  dashed?: boolean;
  color?: string;
  cssClass?: string;
}

export interface Figure {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: Scale;
  yScale: Scale;
  series: Series[];
}

/** Stable short decimal for tick labels and coordinates. */
export function fmt(value: number): string {
  if (!Number.isFinite(value)) return "0";
  if (value === 0) return "0";
  const rendered = Math.abs(value) >= 1e-3 && Math.abs(value) < 1e4
    ? Number(value.toPrecision(6)).toString()
    : value.toExponential(3);
  return rendered;
}

function transform(value: number, scale: Scale): number {
  return scale === "log" ? Math.log10(value) : value;
}

function ticksLinear(lo: number, hi: number): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / 4)));
  const mult = span / step > 8 ? 2 : 1;
  const first = Math.ceil(lo / (step * mult)) * step * mult;
  const out: number[] = [];
  for (let v = first; v <= hi + 1e-12 * span; v += step * mult) out.push(v);
  return out.length >= 2 ? out : [lo, hi];
}

function ticksLog(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); Math.pow(10, e) <= hi * (1 + 1e-9); e++) {
    out.push(Math.pow(10, e));
  }
  return out.length >= 2 ? out : [lo, hi];
}

export function renderFigure(fig: Figure): string {
  const xs = fig.series.flatMap((s) => s.x);
  const ys = fig.series.flatMap((s) => s.y);
  const hasData = xs.length > 0;

  const body: string[] = [];
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  body.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="black" stroke-width="1"/>`,
  );
  body.push(
    `<text x="${WIDTH / 2}" y="16" text-anchor="middle" font-size="14">${fig.title}</text>`,
  );
  body.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="12">${fig.xLabel}</text>`,
  );
  body.push(
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${fig.yLabel}</text>`,
  );

  if (hasData) {
    for (const v of [...xs, ...ys]) {
      if (!Number.isFinite(v)) throw new Error("non-finite value reached the renderer");
    }
    if (fig.xScale === "log" && xs.some((v) => v <= 0)) throw new Error("log x-axis needs positive data");
    if (fig.yScale === "log" && ys.some((v) => v <= 0)) throw new Error("log y-axis needs positive data");

    const xLo = Math.min(...xs);
    const xHi = Math.max(...xs);
    const yLo = Math.min(...ys);
    const yHi = Math.max(...ys);
    const pad = (lo: number, hi: number, scale: Scale): [number, number] => {
      const a = transform(lo, scale);
      const b = transform(hi, scale);
      const margin = (b - a || 1) * 0.08;
      return [a - margin, b + margin];
    };
    const [txLo, txHi] = pad(xLo, xHi, fig.xScale);
    const [tyLo, tyHi] = pad(yLo, yHi, fig.yScale);
    const px = (v: number) => MARGIN.left + ((transform(v, fig.xScale) - txLo) / (txHi - txLo)) * plotW;
    const py = (v: number) => MARGIN.top + plotH - ((transform(v, fig.yScale) - tyLo) / (tyHi - tyLo)) * plotH;

    const xTicks = fig.xScale === "log" ? ticksLog(xLo, xHi) : ticksLinear(txLo, txHi);
    for (const t of xTicks) {
      const cx = px(t);
      if (cx < MARGIN.left - 1 || cx > MARGIN.left + plotW + 1) continue;
      body.push(`<line x1="${fmt(cx)}" y1="${MARGIN.top + plotH}" x2="${fmt(cx)}" y2="${MARGIN.top + plotH + 5}" stroke="black"/>`);
      body.push(`<text x="${fmt(cx)}" y="${MARGIN.top + plotH + 20}" text-anchor="middle" font-size="10">${fmt(t)}</text>`);
    }
    const yTicks = fig.yScale === "log" ? ticksLog(yLo, yHi) : ticksLinear(tyLo, tyHi);
    for (const t of yTicks) {
      const cy = py(t);
      if (cy < MARGIN.top - 1 || cy > MARGIN.top + plotH + 1) continue;
      body.push(`<line x1="${MARGIN.left - 5}" y1="${fmt(cy)}" x2="${MARGIN.left}" y2="${fmt(cy)}" stroke="black"/>`);
      body.push(`<text x="${MARGIN.left - 8}" y="${fmt(cy + 3)}" text-anchor="end" font-size="10">${fmt(t)}</text>`);
    }

    for (const s of fig.series) {
      const color = s.color ?? "#1f4e8c";
      const cls = s.cssClass ? ` class="${s.cssClass}"` : "";
      if (s.line !== false && s.x.length >= 2) {
        const pts = s.x.map((v, i) => `${fmt(px(v))},${fmt(py(s.y[i]))}`).join(" ");
        const dash = s.dashed ? ` stroke-dasharray="6,4"` : "";
        body.push(`<polyline${cls} points="${pts}" fill="none" stroke="${color}" stroke-width="1.5"${dash}/>`);
      }
      if (s.marker) {
        for (let i = 0; i < s.x.length; i++) {
          body.push(`<circle${cls} cx="${fmt(px(s.x[i]))}" cy="${fmt(py(s.y[i]))}" r="4" fill="${color}"/>`);
        }
      }
    }
  }

  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}
