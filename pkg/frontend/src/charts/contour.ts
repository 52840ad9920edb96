// Marching-squares contours for the binormal score-plane previews.
//
// The service sends a peak-normalized density grid; contour lines are
// extracted here purely for drawing. z[i][j] is the density at
// (x[j], y[i]), model A on the x-axis and model B on the y-axis.

import type { DensityGridPayload } from "../api.js";
import { svgEl } from "../dom.js";
import { fmt } from "../format.js";
import { linearScale, ticks } from "./scale.js";

export type Point = [number, number];
type Segment = [Point, Point];

/**
 * All contour polylines of `z` at one level. Closed loops come back with
 * identical first and last points.
 */
export function contourLines(
  x: number[],
  y: number[],
  z: number[][],
  level: number,
): Point[][] {
  const segments: Segment[] = [];
  for (let i = 0; i < y.length - 1; i++) {
    const rowLo = z[i] as number[];
    const rowHi = z[i + 1] as number[];
    for (let j = 0; j < x.length - 1; j++) {
      const v00 = rowLo[j] as number; // (x[j],   y[i])
      const v10 = rowLo[j + 1] as number; // (x[j+1], y[i])
      const v11 = rowHi[j + 1] as number; // (x[j+1], y[i+1])
      const v01 = rowHi[j] as number; // (x[j],   y[i+1])
      let index = 0;
      if (v00 >= level) index |= 1;
      if (v10 >= level) index |= 2;
      if (v11 >= level) index |= 4;
      if (v01 >= level) index |= 8;
      if (index === 0 || index === 15) continue;

      const x0 = x[j] as number;
      const x1 = x[j + 1] as number;
      const y0 = y[i] as number;
      const y1 = y[i + 1] as number;
      const lerp = (a: number, b: number, va: number, vb: number) =>
        a + ((level - va) / (vb - va)) * (b - a);
      const bottom = (): Point => [lerp(x0, x1, v00, v10), y0];
      const top = (): Point => [lerp(x0, x1, v01, v11), y1];
      const left = (): Point => [x0, lerp(y0, y1, v00, v01)];
      const right = (): Point => [x1, lerp(y0, y1, v10, v11)];

      switch (index) {
        case 1:
        case 14:
          segments.push([left(), bottom()]);
          break;
        case 2:
        case 13:
          segments.push([bottom(), right()]);
          break;
        case 3:
        case 12:
          segments.push([left(), right()]);
          break;
        case 4:
        case 11:
          segments.push([top(), right()]);
          break;
        case 6:
        case 9:
          segments.push([bottom(), top()]);
          break;
        case 7:
        case 8:
          segments.push([left(), top()]);
          break;
        case 5: {
          // saddle: disambiguate with the cell-centre value
          const center = (v00 + v10 + v11 + v01) / 4;
          if (center >= level) {
            segments.push([left(), top()], [bottom(), right()]);
          } else {
            segments.push([left(), bottom()], [top(), right()]);
          }
          break;
        }
        case 10: {
          const center = (v00 + v10 + v11 + v01) / 4;
          if (center >= level) {
            segments.push([left(), bottom()], [top(), right()]);
          } else {
            segments.push([left(), top()], [bottom(), right()]);
          }
          break;
        }
      }
    }
  }
  return chainSegments(segments, gridEpsilon(x, y));
}

function gridEpsilon(x: number[], y: number[]): number {
  const spanX = Math.abs((x[x.length - 1] as number) - (x[0] as number));
  const spanY = Math.abs((y[y.length - 1] as number) - (y[0] as number));
  return Math.max(spanX, spanY, 1) * 1e-9;
}

/** Join shared endpoints into polylines; orientation is irrelevant. */
function chainSegments(segments: Segment[], eps: number): Point[][] {
  const key = (p: Point) => `${Math.round(p[0] / eps)}:${Math.round(p[1] / eps)}`;
  const byEnd = new Map<string, number[]>();
  segments.forEach((seg, idx) => {
    for (const end of seg) {
      const k = key(end);
      const list = byEnd.get(k);
      if (list) list.push(idx);
      else byEnd.set(k, [idx]);
    }
  });
  const used = new Array<boolean>(segments.length).fill(false);
  const lines: Point[][] = [];

  const takeNext = (point: Point, exclude: number): number | null => {
    for (const idx of byEnd.get(key(point)) ?? []) {
      if (!used[idx] && idx !== exclude) return idx;
    }
    return null;
  };

  for (let start = 0; start < segments.length; start++) {
    if (used[start]) continue;
    used[start] = true;
    const seg = segments[start] as Segment;
    const line: Point[] = [seg[0], seg[1]];
    // extend forward from the tail, then backward from the head
    for (;;) {
      const next = takeNext(line[line.length - 1] as Point, -1);
      if (next === null) break;
      used[next] = true;
      const [a, b] = segments[next] as Segment;
      const tail = line[line.length - 1] as Point;
      line.push(samePoint(a, tail, eps) ? b : a);
    }
    for (;;) {
      const next = takeNext(line[0] as Point, -1);
      if (next === null) break;
      used[next] = true;
      const [a, b] = segments[next] as Segment;
      const head = line[0] as Point;
      line.unshift(samePoint(a, head, eps) ? b : a);
    }
    lines.push(line);
  }
  return lines;
}

function samePoint(a: Point, b: Point, eps: number): boolean {
  return Math.abs(a[0] - b[0]) <= eps && Math.abs(a[1] - b[1]) <= eps;
}

export const DEFAULT_LEVELS = [0.05, 0.15, 0.3, 0.5, 0.7, 0.9];

export interface ContourPlotOptions {
  title: string;
  width?: number;
  height?: number;
  levels?: number[];
  stampText?: string;
}

const MARGIN = { top: 26, right: 14, bottom: 40, left: 52 };

export function renderContourPlot(
  grid: DensityGridPayload,
  options: ContourPlotOptions,
): SVGSVGElement {
  const width = options.width ?? 300;
  const height = options.height ?? 300;
  const levels = options.levels ?? DEFAULT_LEVELS;
  const innerW = width - MARGIN.left - MARGIN.right;
  const innerH = height - MARGIN.top - MARGIN.bottom;
  const xDomain: [number, number] = [grid.x[0] as number, grid.x[grid.x.length - 1] as number];
  const yDomain: [number, number] = [grid.y[0] as number, grid.y[grid.y.length - 1] as number];
  const sx = linearScale(xDomain, [MARGIN.left, MARGIN.left + innerW]);
  const sy = linearScale(yDomain, [MARGIN.top + innerH, MARGIN.top]);

  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${height}`,
    class: "contour-plot",
    role: "img",
    "data-levels": levels.join(","),
  });
  if (options.stampText) svg.setAttribute("data-stamp", options.stampText);
  svg.appendChild(svgEl("title", {}, options.title));
  svg.appendChild(
    svgEl(
      "text",
      { x: width / 2, y: 14, class: "plot-title", "text-anchor": "middle" },
      options.title,
    ),
  );

  for (const tick of ticks(xDomain, 4)) {
    if (tick < xDomain[0] || tick > xDomain[1]) continue;
    svg.appendChild(
      svgEl(
        "text",
        {
          x: sx(tick),
          y: MARGIN.top + innerH + 16,
          class: "tick-label",
          "text-anchor": "middle",
        },
        fmt(tick, 2),
      ),
    );
  }
  for (const tick of ticks(yDomain, 4)) {
    if (tick < yDomain[0] || tick > yDomain[1]) continue;
    svg.appendChild(
      svgEl(
        "text",
        { x: MARGIN.left - 6, y: sy(tick) + 3, class: "tick-label", "text-anchor": "end" },
        fmt(tick, 2),
      ),
    );
  }
  svg.appendChild(
    svgEl(
      "text",
      { x: MARGIN.left + innerW / 2, y: height - 6, class: "axis-label", "text-anchor": "middle" },
      "model A score (latent)",
    ),
  );
  svg.appendChild(
    svgEl(
      "text",
      {
        x: 13,
        y: MARGIN.top + innerH / 2,
        class: "axis-label",
        "text-anchor": "middle",
        transform: `rotate(-90 13 ${MARGIN.top + innerH / 2})`,
      },
      "model B score (latent)",
    ),
  );
  svg.appendChild(
    svgEl("rect", {
      x: MARGIN.left,
      y: MARGIN.top,
      width: innerW,
      height: innerH,
      class: "plot-frame",
      fill: "none",
    }),
  );

  for (const level of levels) {
    const lines = contourLines(grid.x, grid.y, grid.z, level);
    for (const line of lines) {
      const path = line
        .map((p, i) => `${i === 0 ? "M" : "L"}${sx(p[0]).toFixed(2)},${sy(p[1]).toFixed(2)}`)
        .join("");
      svg.appendChild(
        svgEl("path", {
          d: path,
          class: "contour-line",
          fill: "none",
          opacity: 0.35 + 0.6 * level,
          "data-level": String(level),
        }),
      );
    }
  }

  const mx = sx(grid.mean_x);
  const my = sy(grid.mean_y);
  const mark = svgEl("g", {
    class: "mean-marker",
    "data-mean-x": String(grid.mean_x),
    "data-mean-y": String(grid.mean_y),
  });
  mark.appendChild(svgEl("line", { x1: mx - 5, x2: mx + 5, y1: my, y2: my }));
  mark.appendChild(svgEl("line", { x1: mx, x2: mx, y1: my - 5, y2: my + 5 }));
  mark.appendChild(
    svgEl("title", {}, `mean (${fmt(grid.mean_x, 3)}, ${fmt(grid.mean_y, 3)})`),
  );
  svg.appendChild(mark);
  return svg;
}
