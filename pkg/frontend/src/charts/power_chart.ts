// Power-versus-N chart: curve, Monte Carlo error bands, target marker.
//
// The chart draws exactly what the service returned; the only derived
// quantities are the 95% band edges (power +/- 1.96 mc_se, clamped to
// [0, 1]) and which grid point first reaches the target line.

import type { PowerPoint } from "../api.js";
import { svgEl } from "../dom.js";
import { fmt, fmtPercent } from "../format.js";
import { linearScale, padDomain, ticks } from "./scale.js";

const BAND_Z = 1.96;

export interface PowerChartModel {
  points: PowerPoint[];
  bandLow: number[];
  bandHigh: number[];
  target: number;
  /** Smallest evaluated n whose estimated power reaches the target. */
  targetN: number | null;
  /** True when every dip between neighbours stays inside the joint bands. */
  monotoneWithinBands: boolean;
}

export function buildPowerChartModel(rawPoints: PowerPoint[], target = 0.8): PowerChartModel {
  const points = [...rawPoints].sort((a, b) => a.n - b.n);
  const bandLow = points.map((p) => Math.max(0, p.power - BAND_Z * p.mc_se));
  const bandHigh = points.map((p) => Math.min(1, p.power + BAND_Z * p.mc_se));
  let targetN: number | null = null;
  for (const point of points) {
    if (point.power >= target) {
      targetN = point.n;
      break;
    }
  }
  let monotone = true;
  for (let i = 1; i < points.length; i++) {
    if ((bandHigh[i] as number) < (bandLow[i - 1] as number)) {
      monotone = false;
      break;
    }
  }
  return { points, bandLow, bandHigh, target, targetN, monotoneWithinBands: monotone };
}

export interface PowerChartOptions {
  width?: number;
  height?: number;
  stampText?: string;
}

const MARGIN = { top: 18, right: 18, bottom: 40, left: 52 };

export function renderPowerChart(
  model: PowerChartModel,
  options: PowerChartOptions = {},
): SVGSVGElement {
  const width = options.width ?? 560;
  const height = options.height ?? 320;
  const innerW = width - MARGIN.left - MARGIN.right;
  const innerH = height - MARGIN.top - MARGIN.bottom;
  const ns = model.points.map((p) => p.n);
  const xDomain = padDomain([Math.min(...ns), Math.max(...ns)], 0.04);
  const x = linearScale(xDomain, [MARGIN.left, MARGIN.left + innerW]);
  const y = linearScale([0, 1], [MARGIN.top + innerH, MARGIN.top]);

  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${height}`,
    class: "power-chart",
    role: "img",
    "data-monotone": String(model.monotoneWithinBands),
    "data-target-n": model.targetN === null ? "" : String(model.targetN),
  });
  if (options.stampText) {
    svg.setAttribute("data-stamp", options.stampText);
    svg.appendChild(svgEl("title", {}, `power curve (${options.stampText})`));
  }

  // gridlines and axes
  for (const tick of ticks([0, 1], 5)) {
    const py = y(tick);
    svg.appendChild(
      svgEl("line", {
        x1: MARGIN.left,
        x2: MARGIN.left + innerW,
        y1: py,
        y2: py,
        class: "gridline",
      }),
    );
    svg.appendChild(
      svgEl(
        "text",
        { x: MARGIN.left - 8, y: py + 4, class: "tick-label", "text-anchor": "end" },
        fmt(tick, 2),
      ),
    );
  }
  for (const tick of ticks(xDomain, 6)) {
    if (tick < xDomain[0] || tick > xDomain[1]) continue;
    const px = x(tick);
    svg.appendChild(
      svgEl(
        "text",
        {
          x: px,
          y: MARGIN.top + innerH + 18,
          class: "tick-label",
          "text-anchor": "middle",
        },
        fmt(tick),
      ),
    );
  }
  svg.appendChild(
    svgEl(
      "text",
      {
        x: MARGIN.left + innerW / 2,
        y: height - 6,
        class: "axis-label",
        "text-anchor": "middle",
      },
      "evaluation sample size N",
    ),
  );
  svg.appendChild(
    svgEl(
      "text",
      {
        x: 14,
        y: MARGIN.top + innerH / 2,
        class: "axis-label",
        "text-anchor": "middle",
        transform: `rotate(-90 14 ${MARGIN.top + innerH / 2})`,
      },
      "estimated power",
    ),
  );

  // 95% Monte Carlo band, drawn under the curve
  if (model.points.length > 1) {
    const forward = model.points.map((p, i) => `${x(p.n)},${y(model.bandHigh[i] as number)}`);
    const back = [...model.points]
      .map((p, i) => `${x(p.n)},${y(model.bandLow[i] as number)}`)
      .reverse();
    svg.appendChild(
      svgEl("polygon", {
        points: [...forward, ...back].join(" "),
        class: "power-band",
      }),
    );
  }

  // target rule and marker
  const targetY = y(model.target);
  svg.appendChild(
    svgEl("line", {
      x1: MARGIN.left,
      x2: MARGIN.left + innerW,
      y1: targetY,
      y2: targetY,
      class: "target-rule",
      "data-target": String(model.target),
    }),
  );
  svg.appendChild(
    svgEl(
      "text",
      {
        x: MARGIN.left + innerW,
        y: targetY - 5,
        class: "target-label",
        "text-anchor": "end",
      },
      `target ${fmtPercent(model.target, 0)}`,
    ),
  );

  // the curve itself
  if (model.points.length > 0) {
    svg.appendChild(
      svgEl("polyline", {
        points: model.points.map((p) => `${x(p.n)},${y(p.power)}`).join(" "),
        class: "power-curve",
        fill: "none",
      }),
    );
  }
  for (const [i, point] of model.points.entries()) {
    const circle = svgEl("circle", {
      cx: x(point.n),
      cy: y(point.power),
      r: 3.5,
      class: "power-point",
      "data-n": String(point.n),
      "data-power": String(point.power),
      "data-mc-se": String(point.mc_se),
    });
    const bandText = `${fmt(model.bandLow[i] as number, 3)} to ${fmt(model.bandHigh[i] as number, 3)}`;
    circle.appendChild(
      svgEl(
        "title",
        {},
        `N=${point.n}: power ${fmt(point.power, 3)} (95% MC band ${bandText})`,
      ),
    );
    svg.appendChild(circle);
  }

  if (model.targetN !== null) {
    const hit = model.points.find((p) => p.n === model.targetN);
    if (hit) {
      const px = x(hit.n);
      svg.appendChild(
        svgEl("line", {
          x1: px,
          x2: px,
          y1: y(0),
          y2: y(hit.power),
          class: "target-marker-guide",
        }),
      );
      svg.appendChild(
        svgEl("circle", {
          cx: px,
          cy: y(hit.power),
          r: 6,
          class: "target-marker",
          "data-n": String(hit.n),
        }),
      );
      svg.appendChild(
        svgEl(
          "text",
          { x: px, y: y(hit.power) - 10, class: "target-marker-label", "text-anchor": "middle" },
          `N = ${hit.n}`,
        ),
      );
    }
  }
  return svg;
}
