// Hand-built result documents with the service's shapes, small enough to
// reason about in assertions. Values are arbitrary but self-consistent.

import type { DensityGridPayload, PowerPoint, ResultDocument } from "../src/api.js";

export function singleDoc(): ResultDocument {
  return {
    schema: "aucpower-result/1",
    tool_version: "0.1.0",
    calculation: "sample-size-single",
    inputs: { auroc: 0.75, prevalence: 0.2, ci_width: 0.1 },
    results: { n_total: 512, n_events: 103, se_achieved: 0.02549, target_se: 0.02551 },
    advisories: [],
  };
}

export function curveDoc(): ResultDocument {
  return {
    schema: "aucpower-result/1",
    tool_version: "0.1.0",
    calculation: "power-pilot",
    inputs: {
      pilot: {
        n_rows: 240,
        n_cases: 72,
        n_controls: 168,
        prevalence: 0.3,
        auroc_a: {
          theta_hat: 0.76,
          se: 0.03,
          ci_low: 0.7,
          ci_high: 0.82,
          n_cases: 72,
          n_controls: 168,
        },
        auroc_b: {
          theta_hat: 0.72,
          se: 0.033,
          ci_low: 0.655,
          ci_high: 0.785,
          n_cases: 72,
          n_controls: 168,
        },
        rows_dropped: 0,
      },
      prevalence_override: null,
      evaluate: { mode: "curve", n_grid: [100, 200, 400, 700, 1000] },
      mc: { alpha: 0.05, iterations: 400, seed: 7, max_redraws_per_iteration: 100 },
    },
    results: {
      curve: [
        { n: 100, power: 0.297, mc_se: 0.0229, degenerate_draws: 0 },
        { n: 200, power: 0.522, mc_se: 0.025, degenerate_draws: 0 },
        { n: 400, power: 0.787, mc_se: 0.0205, degenerate_draws: 0 },
        { n: 700, power: 0.98, mc_se: 0.007, degenerate_draws: 0 },
        { n: 1000, power: 0.998, mc_se: 0.0025, degenerate_draws: 0 },
      ],
    },
    advisories: [],
  };
}

/** The demo pilot's measured curve, as bare points for chart tests. */
export function curvePoints(): PowerPoint[] {
  return (curveDoc().results as { curve: PowerPoint[] }).curve;
}

export function fixedNDoc(): ResultDocument {
  const doc = curveDoc();
  doc.inputs["evaluate"] = { mode: "fixed-n", n: 400 };
  doc.results = { power: { n: 400, power: 0.787, mc_se: 0.0205, degenerate_draws: 2 } };
  return doc;
}

export function minNDoc(): ResultDocument {
  const doc = curveDoc();
  doc.inputs["evaluate"] = { mode: "target-power", target_power: 0.8, n_min: 20, n_max: 5000 };
  doc.results = {
    min_n: {
      n: 430,
      target_power: 0.8,
      achieved: { n: 430, power: 0.812, mc_se: 0.019, degenerate_draws: 0 },
      evaluated: [
        { n: 100, power: 0.3, mc_se: 0.023, degenerate_draws: 0 },
        { n: 430, power: 0.812, mc_se: 0.019, degenerate_draws: 0 },
        { n: 800, power: 0.99, mc_se: 0.005, degenerate_draws: 0 },
      ],
    },
  };
  return doc;
}

/** Peak-normalized bivariate normal on a small grid, like the service sends. */
export function densityGrid(
  meanX: number,
  meanY: number,
  sd = 1,
  resolution = 21,
): DensityGridPayload {
  const x: number[] = [];
  const y: number[] = [];
  for (let i = 0; i < resolution; i++) {
    const t = -4 + (8 * i) / (resolution - 1);
    x.push(meanX + sd * t);
    y.push(meanY + sd * t);
  }
  const z: number[][] = y.map((yy) =>
    x.map((xx) => {
      const dx = (xx - meanX) / sd;
      const dy = (yy - meanY) / sd;
      return Math.exp(-0.5 * (dx * dx + dy * dy));
    }),
  );
  return {
    x,
    y,
    z,
    peak_density: 1 / (2 * Math.PI * sd * sd),
    mean_x: meanX,
    mean_y: meanY,
  };
}

export function previewDoc(): ResultDocument {
  return {
    schema: "aucpower-result/1",
    tool_version: "0.1.0",
    calculation: "binormal-preview",
    inputs: {
      params: {
        mu_case_a: 0.44,
        mu_case_b: 0.41,
        mu_ctrl_a: 0.17,
        mu_ctrl_b: 0.17,
        v_case_a: 0.9,
        v_case_b: 0.9,
        v_ctrl_a: 0.9,
        v_ctrl_b: 0.9,
        r_case: 0.9,
        r_ctrl: 0.9,
        prevalence: 0.2,
      },
      grid_resolution: 64,
    },
    results: {
      anticipated_auroc_a: 0.7345,
      anticipated_auroc_b: 0.7154,
      contours: {
        case: densityGrid(-0.24, -0.36),
        control: densityGrid(-1.59, -1.59),
      },
    },
    advisories: ["control-class scores are negated at generation; check the orientation"],
  };
}

export function binormalResultDoc(): ResultDocument {
  const doc = curveDoc();
  doc.calculation = "power-binormal";
  doc.inputs = {
    params: (previewDoc().inputs as { params: unknown }).params,
    evaluate: { mode: "curve", n_grid: [100, 250, 500, 800] },
    mc: { alpha: 0.05, iterations: 200, seed: 11, max_redraws_per_iteration: 100 },
  };
  doc.results = {
    anticipated_auroc_a: 0.7345,
    anticipated_auroc_b: 0.7154,
    curve: [
      { n: 100, power: 0.11, mc_se: 0.022, degenerate_draws: 0 },
      { n: 250, power: 0.23, mc_se: 0.03, degenerate_draws: 0 },
      { n: 500, power: 0.42, mc_se: 0.035, degenerate_draws: 0 },
      { n: 800, power: 0.6, mc_se: 0.035, degenerate_draws: 0 },
    ],
  };
  doc.advisories = ["control-class scores are negated at generation; check the orientation"];
  return doc;
}
