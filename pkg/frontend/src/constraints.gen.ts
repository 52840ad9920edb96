// Generated by tools/gen_constraints.py from the service's request models.
// Do not edit by hand; run `npm run gen` after changing the server schemas.

export interface FieldRule {
  kind: "number" | "integer" | "integer-list" | "boolean" | "string";
  required: boolean;
  min?: number;
  max?: number;
  exclusiveMin?: boolean;
  exclusiveMax?: boolean;
  minItems?: number;
  default?: number | boolean | string | null;
}

export type RuleSet = Record<string, FieldRule>;

export const SERVER_RULES = {
  single: {
    auroc: { kind: "number", required: true, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true },
    prevalence: { kind: "number", required: true, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true },
    ci_width: { kind: "number", required: true, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true },
  },
  mc: {
    seed: { kind: "integer", required: false, min: 0, max: 18446744073709551616, exclusiveMax: true, default: null },
    alpha: { kind: "number", required: false, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true, default: 0.05 },
    iterations: { kind: "integer", required: false, min: 1, default: 2000 },
  },
  evaluate: {
    n: { kind: "integer", required: false, min: 2, default: null },
    n_grid: { kind: "integer-list", required: false, minItems: 1, default: null },
    target_power: { kind: "number", required: false, min: 0.0, max: 1.0, exclusiveMax: true, default: null },
    n_min: { kind: "integer", required: false, min: 2, default: 20 },
    n_max: { kind: "integer", required: false, min: 2, default: 5000 },
  },
  binormalParams: {
    mu_case_a: { kind: "number", required: true, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true },
    mu_case_b: { kind: "number", required: true, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true },
    mu_ctrl_a: { kind: "number", required: true, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true },
    mu_ctrl_b: { kind: "number", required: true, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true },
    v_case_a: { kind: "number", required: false, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true, default: 0.9 },
    v_case_b: { kind: "number", required: false, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true, default: 0.9 },
    v_ctrl_a: { kind: "number", required: false, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true, default: 0.9 },
    v_ctrl_b: { kind: "number", required: false, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true, default: 0.9 },
    r_case: { kind: "number", required: false, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true, default: 0.9 },
    r_ctrl: { kind: "number", required: false, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true, default: 0.9 },
    prevalence: { kind: "number", required: true, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true },
  },
  preview: {
    grid_resolution: { kind: "integer", required: false, min: 16, max: 256, default: 64 },
  },
  pilot: {
    prevalence: { kind: "number", required: false, min: 0.0, max: 1.0, exclusiveMin: true, exclusiveMax: true, default: null },
  },
} as const satisfies Record<string, RuleSet>;

export const SERVER_CAPS = {
  maxIterations: 20000,
  maxGridPoints: 25,
  maxEvalN: 200000,
  maxUploadBytes: 5242880,
  maxInlineRows: 100000,
} as const;
