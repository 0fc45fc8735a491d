/**
 * The four figure kinds over the solver's CSV schemas. The renderer never
 * recomputes physics: every plotted number is a cell of the input file,
 * except the slope-1/2 guide line of the convergence figure, which is a
 * visual reference anchored at the smallest-step data point.
 */

import { parseCsv, requireColumns, SchemaMismatchError, type Table } from "./csv.js";
import { renderFigure, type Figure, type Series } from "./svg.js";

export type FigureKind = "convergence" | "decay" | "pseudoconf" | "scattering";

export interface FigureSpec {
  kind: FigureKind;
  inputPath: string;
  outputPath: string;
}

export const KIND_COLUMNS: Record<FigureKind, string[]> = {
  convergence: ["tau", "sup_error_l2"],
  decay: ["t", "compensated_decay"],
  pseudoconf: ["t", "pseudoconf_total"],
  scattering: ["t", "cauchy_l2"],
};

const DATA_COLOR = "#1f4e8c";
const GUIDE_COLOR = "#b33a3a";

function sorted(x: number[], y: number[]): { x: number[]; y: number[] } {
  const order = x.map((_, i) => i).sort((a, b) => x[a] - x[b]);
  return { x: order.map((i) => x[i]), y: order.map((i) => y[i]) };
}

export function buildFigure(kind: FigureKind, table: Table, source = "<csv>"): Figure {
  const names = KIND_COLUMNS[kind];
  if (!names) throw new SchemaMismatchError(`unknown figure kind '${kind}'`);
  const [rawX, rawY] = requireColumns(table, names, source);
  const { x, y } = sorted([...rawX], [...rawY]);
  const series: Series[] = [];

  if (kind === "convergence") {
    if (x.length > 0) {
      series.push({ x, y, marker: true, line: false, cssClass: "data-point", color: DATA_COLOR });
      // slope-1/2 reference through the smallest-tau (most asymptotic) point
      const tauMin = x[0];
      const errMin = y[0];
      const tauMax = x[x.length - 1];
      series.push({
        x: [tauMin, tauMax],
        y: [errMin, errMin * Math.sqrt(tauMax / tauMin)],
        line: true,
        dashed: true,
        cssClass: "guide-line",
        color: GUIDE_COLOR,
      });
    }
    return {
      title: "L2 error vs step size (guide: slope 1/2)",
      xLabel: names[0],
      yLabel: names[1],
      xScale: "log",
      yScale: "log",
      series,
    };
  }

  if (kind === "scattering") {
    if (x.length > 0) {
      series.push({ x, y, marker: true, line: true, cssClass: "data-point", color: DATA_COLOR });
    }
    return {
      title: "Back-propagated state: Cauchy differences",
      xLabel: names[0],
      yLabel: names[1],
      xScale: "linear",
      yScale: "log",
      series,
    };
  }

  // decay and pseudoconf: plain linear axes
  if (x.length > 0) {
    series.push({ x, y, marker: true, line: true, cssClass: "data-point", color: DATA_COLOR });
  }
  return {
    title: kind === "decay" ? "Compensated dispersive decay" : "Pseudo-conformal quantity",
    xLabel: names[0],
    yLabel: names[1],
    xScale: "linear",
    yScale: "linear",
    series,
  };
}

export function renderFromCsv(kind: FigureKind, csvText: string, source = "<csv>"): string {
  return renderFigure(buildFigure(kind, parseCsv(csvText, source), source));
}
