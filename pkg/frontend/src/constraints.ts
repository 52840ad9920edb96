// Client-side validation on top of the generated server rule table.
//
// Numeric bounds come from constraints.gen.ts, which is emitted from the
// same pydantic models the service validates with. This module adds the
// cross-field rules those models enforce in validators (mode choice, grid
// ordering, search bounds, operational caps) so nothing the client accepts
// can come back as a 422. Everything here returns plain message strings;
// panels decide where to show them.

import type { FieldRule } from "./constraints.gen.js";
import { SERVER_CAPS, SERVER_RULES } from "./constraints.gen.js";

export { SERVER_CAPS, SERVER_RULES };
export type { FieldRule };

// Seeds stay below 2^53 - 1 so they survive JSON number round trips
// exactly; the server accepts the full 64-bit range, which a JS double
// cannot represent. Tighter than the server, never looser.
export const MAX_UI_SEED = Number.MAX_SAFE_INTEGER;

// The Monte Carlo calculators reject n = 2 as degenerate every time: a
// two-row draw has at most one score per class, so the placement variance
// is identically zero. Blocking it client-side saves a guaranteed 422.
export const MIN_MC_N = 3;

export function checkField(name: string, rule: FieldRule, value: number | null): string | null {
  if (value === null) {
    return rule.required ? `${name} is required` : null;
  }
  if (!Number.isFinite(value)) {
    return `${name} must be a finite number`;
  }
  if ((rule.kind === "integer" || rule.kind === "integer-list") && !Number.isInteger(value)) {
    return `${name} must be an integer`;
  }
  if (rule.min !== undefined) {
    if (rule.exclusiveMin ? value <= rule.min : value < rule.min) {
      const bound = rule.exclusiveMin ? `greater than ${rule.min}` : `at least ${rule.min}`;
      return `${name} must be ${bound}`;
    }
  }
  if (rule.max !== undefined) {
    if (rule.exclusiveMax ? value >= rule.max : value > rule.max) {
      const bound = rule.exclusiveMax ? `less than ${rule.max}` : `at most ${rule.max}`;
      return `${name} must be ${bound}`;
    }
  }
  return null;
}

/** Parse a text-input value against a rule; empty means "not given". */
export function parseField(
  name: string,
  rule: FieldRule,
  raw: string,
): { value: number | null; error: string | null } {
  const trimmed = raw.trim();
  if (trimmed === "") {
    return { value: null, error: rule.required ? `${name} is required` : null };
  }
  const value = Number(trimmed);
  if (!Number.isFinite(value)) {
    return { value: null, error: `${name} must be a number` };
  }
  return { value, error: checkField(name, rule, value) };
}

export type EvalMode = "fixed-n" | "curve" | "target-power";

export interface EvalChoice {
  mode: EvalMode;
  n: number | null;
  nGrid: number[] | null;
  targetPower: number | null;
  nMin: number;
  nMax: number;
}

/**
 * Cross-field rules for the three evaluation modes, mirrored from the
 * server's model validator and the power-curve / search preconditions.
 * Returns every violated rule, not just the first.
 */
export function checkEvaluate(choice: EvalChoice, minN: number = MIN_MC_N): string[] {
  const problems: string[] = [];
  const rules = SERVER_RULES.evaluate;
  if (choice.mode === "fixed-n") {
    if (choice.n === null) {
      problems.push("sample size is required");
    } else {
      const err = checkField("sample size", rules.n, choice.n);
      if (err) problems.push(err);
      else if (choice.n < minN) problems.push(`sample size must be at least ${minN}`);
      else if (choice.n > SERVER_CAPS.maxEvalN) {
        problems.push(`sample size must be at most ${SERVER_CAPS.maxEvalN}`);
      }
    }
  } else if (choice.mode === "curve") {
    const grid = choice.nGrid;
    if (grid === null || grid.length === 0) {
      problems.push("the grid needs at least one sample size");
    } else {
      if (grid.length > SERVER_CAPS.maxGridPoints) {
        problems.push(`the grid allows at most ${SERVER_CAPS.maxGridPoints} points`);
      }
      for (const n of grid) {
        if (!Number.isInteger(n)) {
          problems.push(`grid entry ${n} is not an integer`);
          break;
        }
      }
      if (grid.some((n) => n < minN)) {
        problems.push(`every grid entry must be at least ${minN}`);
      }
      if (grid.some((n) => n > SERVER_CAPS.maxEvalN)) {
        problems.push(`every grid entry must be at most ${SERVER_CAPS.maxEvalN}`);
      }
      for (let i = 1; i < grid.length; i++) {
        if ((grid[i] as number) <= (grid[i - 1] as number)) {
          problems.push("grid sample sizes must be strictly increasing");
          break;
        }
      }
    }
  } else {
    if (choice.targetPower === null) {
      problems.push("target power is required");
    } else {
      const err = checkField("target power", rules.target_power, choice.targetPower);
      if (err) problems.push(err);
    }
    const minErr = checkField("search minimum", rules.n_min, choice.nMin);
    if (minErr) problems.push(minErr);
    else if (choice.nMin < minN) problems.push(`search minimum must be at least ${minN}`);
    const maxErr = checkField("search maximum", rules.n_max, choice.nMax);
    if (maxErr) problems.push(maxErr);
    if (!minErr && !maxErr && choice.nMin >= choice.nMax) {
      problems.push("search minimum must be below search maximum");
    }
    if (choice.nMax > SERVER_CAPS.maxEvalN) {
      problems.push(`search maximum must be at most ${SERVER_CAPS.maxEvalN}`);
    }
  }
  return problems;
}

export interface McChoice {
  seed: number | null;
  alpha: number;
  iterations: number;
}

export function checkMc(mc: McChoice): string[] {
  const problems: string[] = [];
  const rules = SERVER_RULES.mc;
  if (mc.seed !== null) {
    const err = checkField("seed", rules.seed, mc.seed);
    if (err) problems.push(err);
    else if (mc.seed > MAX_UI_SEED) {
      problems.push(`seed must be at most ${MAX_UI_SEED} to round-trip exactly`);
    }
  }
  const alphaErr = checkField("alpha", rules.alpha, mc.alpha);
  if (alphaErr) problems.push(alphaErr);
  const iterErr = checkField("iterations", rules.iterations, mc.iterations);
  if (iterErr) problems.push(iterErr);
  else if (mc.iterations > SERVER_CAPS.maxIterations) {
    problems.push(`iterations must be at most ${SERVER_CAPS.maxIterations}`);
  }
  return problems;
}

export function checkBinormalParams(params: Record<string, number | null>): string[] {
  const problems: string[] = [];
  for (const [name, rule] of Object.entries(SERVER_RULES.binormalParams)) {
    const err = checkField(name, rule, params[name] ?? null);
    if (err) problems.push(err);
  }
  return problems;
}

export function checkSingle(values: {
  auroc: number | null;
  prevalence: number | null;
  ci_width: number | null;
}): string[] {
  const problems: string[] = [];
  for (const [name, rule] of Object.entries(SERVER_RULES.single)) {
    const err = checkField(name, rule, values[name as keyof typeof values]);
    if (err) problems.push(err);
  }
  return problems;
}

/** Parse a comma-separated grid the same way the upload endpoint does. */
export function parseGridText(raw: string): { grid: number[] | null; error: string | null } {
  const trimmed = raw.trim();
  if (trimmed === "") {
    return { grid: null, error: "the grid needs at least one sample size" };
  }
  const parts = trimmed.split(",").map((p) => p.trim());
  const grid: number[] = [];
  for (const part of parts) {
    if (!/^[+-]?\d+$/.test(part)) {
      return { grid: null, error: `grid entry "${part}" is not an integer` };
    }
    grid.push(Number(part));
  }
  return { grid, error: null };
}

/**
 * Interactive-control envelope: sliders and spinners stay strictly inside
 * the open (0, 1) server intervals so drag extremes can never produce a
 * rejected value. Typed input is checked against the full table instead.
 */
export const UNIT_SLIDER = { min: 0.01, max: 0.99, step: 0.005 } as const;

export function randomSeed(): number {
  // 48 random bits: comfortably inside the exact-integer range.
  const hi = Math.floor(Math.random() * 0x1000000);
  const lo = Math.floor(Math.random() * 0x1000000);
  return hi * 0x1000000 + lo;
}
