// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { DEFAULT_LEVELS, contourLines, renderContourPlot } from "../src/charts/contour.js";
import type { Point } from "../src/charts/contour.js";
import { densityGrid } from "./fixtures.js";

const closed = (line: Point[]) =>
  line.length > 2 &&
  Math.abs(line[0]![0] - line[line.length - 1]![0]) < 1e-6 &&
  Math.abs(line[0]![1] - line[line.length - 1]![1]) < 1e-6;

describe("contourLines", () => {
  it("cuts a vertical half-plane field along the expected x", () => {
    // z = x over a [0,4]x[0,2] grid: the 1.5-contour is the line x = 1.5.
    const x = [0, 1, 2, 3, 4];
    const y = [0, 1, 2];
    const z = y.map(() => x.map((vx) => vx));
    const lines = contourLines(x, y, z, 1.5);
    expect(lines).toHaveLength(1);
    const line = lines[0]!;
    expect(line.length).toBeGreaterThanOrEqual(2);
    for (const p of line) expect(p[0]).toBeCloseTo(1.5, 9);
    const ys = line.map((p) => p[1]);
    expect(Math.min(...ys)).toBeCloseTo(0, 9);
    expect(Math.max(...ys)).toBeCloseTo(2, 9);
  });

  it("interpolates crossings linearly within a cell", () => {
    // One cell with values 0 and 10 across: level 2.5 sits a quarter in.
    const lines = contourLines(
      [0, 1],
      [0, 1],
      [
        [0, 10],
        [0, 10],
      ],
      2.5,
    );
    expect(lines).toHaveLength(1);
    for (const p of lines[0]!) expect(p[0]).toBeCloseTo(0.25, 9);
  });

  it("recovers a circle's radius from a radial field", () => {
    // z = 1 - r/4 on a fine grid: level c is the circle r = 4(1 - c). The
    // level is chosen so the circle crosses strictly between grid nodes,
    // matching real density grids where exact node hits do not occur.
    const n = 81;
    const axis = Array.from({ length: n }, (_, i) => -4 + (8 * i) / (n - 1));
    const z = axis.map((vy) => axis.map((vx) => 1 - Math.hypot(vx, vy) / 4));
    const level = 0.47;
    const lines = contourLines(axis, axis, z, level);
    expect(lines).toHaveLength(1);
    const loop = lines[0]!;
    expect(closed(loop)).toBe(true);
    for (const p of loop) {
      expect(Math.hypot(p[0], p[1])).toBeCloseTo(2.12, 2);
    }
  });

  it("closes loops on the synthetic bivariate normal", () => {
    const grid = densityGrid(0, 0, 1, 41);
    for (const level of [0.3, 0.5, 0.7]) {
      const lines = contourLines(grid.x, grid.y, grid.z, level);
      expect(lines).toHaveLength(1);
      expect(closed(lines[0]!)).toBe(true);
    }
  });

  it("keeps concentric levels nested around the mean", () => {
    const grid = densityGrid(1, -1, 0.8, 41);
    const radius = (level: number) => {
      const lines = contourLines(grid.x, grid.y, grid.z, level);
      expect(lines).toHaveLength(1);
      const rs = lines[0]!.map((p) => Math.hypot(p[0] - 1, p[1] + 1));
      return rs.reduce((a, b) => a + b, 0) / rs.length;
    };
    expect(radius(0.7)).toBeLessThan(radius(0.5));
    expect(radius(0.5)).toBeLessThan(radius(0.3));
  });

  it("splits a saddle cell into two strands, not a crossing", () => {
    // Opposite high corners (case 5 pattern) with a low centre: the level
    // set is two hyperbola branches, so two separate polylines.
    const x = [0, 1];
    const y = [0, 1];
    const z = [
      [1, 0],
      [0, 1],
    ];
    const lines = contourLines(x, y, z, 0.6);
    expect(lines).toHaveLength(2);
    for (const line of lines) expect(line).toHaveLength(2);
  });

  it("keeps two well-separated blobs as two loops", () => {
    const n = 61;
    const axis = Array.from({ length: n }, (_, i) => -6 + (12 * i) / (n - 1));
    const blob = (cx: number, vx: number, vy: number) =>
      Math.exp(-((vx - cx) ** 2 + vy ** 2) / 0.8);
    const z = axis.map((vy) => axis.map((vx) => blob(-3, vx, vy) + blob(3, vx, vy)));
    const lines = contourLines(axis, axis, z, 0.5);
    expect(lines).toHaveLength(2);
    for (const line of lines) expect(closed(line)).toBe(true);
    const centers = lines.map(
      (line) => line.reduce((a, p) => a + p[0], 0) / line.length,
    );
    centers.sort((a, b) => a - b);
    expect(centers[0]).toBeCloseTo(-3, 1);
    expect(centers[1]).toBeCloseTo(3, 1);
  });

  it("returns nothing when the level clears the whole field", () => {
    const grid = densityGrid(0, 0, 1, 21);
    expect(contourLines(grid.x, grid.y, grid.z, 1.5)).toEqual([]);
  });
});

describe("renderContourPlot", () => {
  it("draws one path per default level on a normalized peak", () => {
    const grid = densityGrid(-0.24, -0.36, 1, 41);
    const svg = renderContourPlot(grid, { title: "cases" });
    const paths = svg.querySelectorAll("path.contour-line");
    expect(paths).toHaveLength(DEFAULT_LEVELS.length);
    const levels = Array.from(paths).map((p) => Number(p.getAttribute("data-level")));
    expect(levels).toEqual(DEFAULT_LEVELS);
    expect(svg.getAttribute("data-levels")).toBe(DEFAULT_LEVELS.join(","));
  });

  it("places the mean marker and records its coordinates", () => {
    const grid = densityGrid(0.4, -0.2, 1, 31);
    const svg = renderContourPlot(grid, { title: "controls" });
    const marker = svg.querySelector("g.mean-marker")!;
    expect(marker).not.toBeNull();
    expect(Number(marker.getAttribute("data-mean-x"))).toBeCloseTo(0.4, 9);
    expect(Number(marker.getAttribute("data-mean-y"))).toBeCloseTo(-0.2, 9);
    expect(marker.querySelectorAll("line")).toHaveLength(2);
  });

  it("labels both latent-score axes and titles the plot", () => {
    const svg = renderContourPlot(densityGrid(0, 0, 1, 21), { title: "cases" });
    const text = svg.textContent ?? "";
    expect(text).toContain("model A score (latent)");
    expect(text).toContain("model B score (latent)");
    expect(svg.querySelector("text.plot-title")!.textContent).toBe("cases");
  });

  it("carries the traceability stamp when provided", () => {
    const svg = renderContourPlot(densityGrid(0, 0, 1, 21), {
      title: "cases",
      stampText: "resolution 64",
    });
    expect(svg.getAttribute("data-stamp")).toBe("resolution 64");
  });
});
