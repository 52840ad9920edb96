// Form controls shared by the calculator panels.
//
// Each control validates through the generated rule table on read; panels
// never send a request while any control reports a problem, which is what
// keeps client-accepted input inside the server's accepted set.

import type { EvalChoice, EvalMode, McChoice } from "../constraints.js";
import {
  MIN_MC_N,
  SERVER_CAPS,
  SERVER_RULES,
  checkEvaluate,
  checkMc,
  parseField,
  parseGridText,
  randomSeed,
} from "../constraints.js";
import type { FieldRule } from "../constraints.gen.js";
import { el } from "../dom.js";

export interface NumberField {
  root: HTMLElement;
  input: HTMLInputElement;
  /** Parse and validate; renders the message inline and returns it. */
  read(): { value: number | null; error: string | null };
  setError(message: string | null): void;
}

export interface NumberFieldOptions {
  id: string;
  label: string;
  rule: FieldRule;
  value?: number | "";
  step?: number;
  hint?: string;
}

export function numberField(options: NumberFieldOptions): NumberField {
  const input = el("input", {
    type: "number",
    id: options.id,
    step: options.step ?? "any",
    value: options.value === undefined ? "" : String(options.value),
  });
  const error = el("span", { class: "field-error", role: "alert" });
  const root = el(
    "div",
    { class: "field" },
    el("label", { for: options.id }, options.label),
    input,
    options.hint ? el("span", { class: "field-hint" }, options.hint) : null,
    error,
  );
  const field: NumberField = {
    root,
    input,
    read() {
      const parsed = parseField(options.label, options.rule, input.value);
      field.setError(parsed.error);
      return parsed;
    },
    setError(message) {
      error.textContent = message ?? "";
      input.classList.toggle("invalid", message !== null);
    },
  };
  input.addEventListener("input", () => field.setError(null));
  return field;
}

export interface SliderField {
  root: HTMLElement;
  slider: HTMLInputElement;
  number: HTMLInputElement;
  read(): { value: number | null; error: string | null };
  set(value: number): void;
  /** Fires on every movement; release fires `onChange` too. */
  onInput?: () => void;
  onChange?: () => void;
}

export interface SliderFieldOptions {
  id: string;
  label: string;
  rule: FieldRule;
  value: number;
  min: number;
  max: number;
  step: number;
}

/**
 * Range slider with a synced numeric box. The slider is confined to the
 * interactive envelope; the box accepts anything the rule table does.
 */
export function sliderField(options: SliderFieldOptions): SliderField {
  const slider = el("input", {
    type: "range",
    id: options.id,
    min: options.min,
    max: options.max,
    step: options.step,
    value: options.value,
  });
  const number = el("input", {
    type: "number",
    id: `${options.id}-value`,
    step: options.step,
    value: options.value,
    class: "slider-value",
  });
  const error = el("span", { class: "field-error", role: "alert" });
  const root = el(
    "div",
    { class: "field slider-field" },
    el("label", { for: options.id }, options.label),
    el("div", { class: "slider-row" }, slider, number),
    error,
  );
  const field: SliderField = {
    root,
    slider,
    number,
    read() {
      const parsed = parseField(options.label, options.rule, number.value);
      error.textContent = parsed.error ?? "";
      number.classList.toggle("invalid", parsed.error !== null);
      return parsed;
    },
    set(value) {
      slider.value = String(value);
      number.value = String(value);
    },
  };
  slider.addEventListener("input", () => {
    number.value = slider.value;
    error.textContent = "";
    field.onInput?.();
  });
  slider.addEventListener("change", () => {
    number.value = slider.value;
    field.onChange?.();
  });
  number.addEventListener("input", () => {
    const parsed = Number(number.value);
    if (Number.isFinite(parsed)) slider.value = number.value;
    error.textContent = "";
    field.onInput?.();
  });
  number.addEventListener("change", () => field.onChange?.());
  return field;
}

export interface EvalControls {
  root: HTMLElement;
  read(minN?: number): { choice: EvalChoice | null; problems: string[] };
}

/** Fixed-N / grid / target-power chooser shared by both MC panels. */
export function evalControls(idPrefix: string, defaults?: { grid?: string }): EvalControls {
  const rules = SERVER_RULES.evaluate;
  const modeName = `${idPrefix}-mode`;
  const radios: Record<EvalMode, HTMLInputElement> = {
    "fixed-n": el("input", { type: "radio", name: modeName, value: "fixed-n" }),
    curve: el("input", { type: "radio", name: modeName, value: "curve" }),
    "target-power": el("input", { type: "radio", name: modeName, value: "target-power" }),
  };
  radios.curve.checked = true;

  const nField = numberField({
    id: `${idPrefix}-n`,
    label: "sample size N",
    rule: rules.n,
    value: 400,
    step: 1,
  });
  const gridInput = el("input", {
    type: "text",
    id: `${idPrefix}-grid`,
    value: defaults?.grid ?? "100, 200, 400, 700, 1000",
  });
  const gridError = el("span", { class: "field-error", role: "alert" });
  const targetField = numberField({
    id: `${idPrefix}-target`,
    label: "target power",
    rule: rules.target_power,
    value: 0.8,
    step: 0.01,
  });
  const nMinField = numberField({
    id: `${idPrefix}-nmin`,
    label: "search minimum",
    rule: rules.n_min,
    value: rules.n_min.default ?? 20,
    step: 1,
  });
  const nMaxField = numberField({
    id: `${idPrefix}-nmax`,
    label: "search maximum",
    rule: rules.n_max,
    value: rules.n_max.default ?? 5000,
    step: 1,
  });

  const crossError = el("div", { class: "field-error cross-error", role: "alert" });
  const root = el(
    "fieldset",
    { class: "eval-controls" },
    el("legend", {}, "evaluate"),
    el(
      "div",
      { class: "eval-mode" },
      el("label", { class: "radio" }, radios["fixed-n"], "single N"),
      el("label", { class: "radio" }, radios.curve, "power curve"),
      el("label", { class: "radio" }, radios["target-power"], "find N for target power"),
    ),
    nField.root,
    el(
      "div",
      { class: "field" },
      el("label", { for: `${idPrefix}-grid` }, "sample-size grid"),
      gridInput,
      el(
        "span",
        { class: "field-hint" },
        `comma separated, strictly increasing, at most ${SERVER_CAPS.maxGridPoints} points`,
      ),
      gridError,
    ),
    targetField.root,
    nMinField.root,
    nMaxField.root,
    crossError,
  );

  const syncVisibility = () => {
    const mode = currentMode();
    nField.root.style.display = mode === "fixed-n" ? "" : "none";
    (gridInput.parentElement as HTMLElement).style.display = mode === "curve" ? "" : "none";
    targetField.root.style.display = mode === "target-power" ? "" : "none";
    nMinField.root.style.display = mode === "target-power" ? "" : "none";
    nMaxField.root.style.display = mode === "target-power" ? "" : "none";
  };
  const currentMode = (): EvalMode => {
    for (const [mode, radio] of Object.entries(radios)) {
      if (radio.checked) return mode as EvalMode;
    }
    return "curve";
  };
  for (const radio of Object.values(radios)) {
    radio.addEventListener("change", syncVisibility);
  }
  syncVisibility();

  return {
    root,
    read(minN = MIN_MC_N) {
      const mode = currentMode();
      const problems: string[] = [];
      let choice: EvalChoice | null = null;
      gridError.textContent = "";
      crossError.textContent = "";
      if (mode === "fixed-n") {
        const n = nField.read();
        if (n.error) problems.push(n.error);
        choice = { mode, n: n.value, nGrid: null, targetPower: null, nMin: 20, nMax: 5000 };
      } else if (mode === "curve") {
        const parsed = parseGridText(gridInput.value);
        if (parsed.error) {
          gridError.textContent = parsed.error;
          problems.push(parsed.error);
        }
        choice = {
          mode,
          n: null,
          nGrid: parsed.grid,
          targetPower: null,
          nMin: 20,
          nMax: 5000,
        };
      } else {
        const target = targetField.read();
        const nMin = nMinField.read();
        const nMax = nMaxField.read();
        for (const f of [target, nMin, nMax]) {
          if (f.error) problems.push(f.error);
        }
        choice = {
          mode,
          n: null,
          nGrid: null,
          targetPower: target.value,
          nMin: nMin.value ?? 0,
          nMax: nMax.value ?? 0,
        };
      }
      if (problems.length === 0 && choice) {
        const crossProblems = checkEvaluate(choice, minN);
        if (crossProblems.length > 0) {
          crossError.textContent = crossProblems.join("; ");
          problems.push(...crossProblems);
        }
      }
      return { choice: problems.length === 0 ? choice : null, problems };
    },
  };
}

export interface McControls {
  root: HTMLElement;
  read(): { mc: McChoice | null; problems: string[] };
  randomizeSeed(): void;
}

export function mcControls(idPrefix: string, defaultIterations = 2000): McControls {
  const rules = SERVER_RULES.mc;
  const seedField = numberField({
    id: `${idPrefix}-seed`,
    label: "seed",
    rule: rules.seed,
    value: randomSeed(),
    step: 1,
    hint: "kept explicit so every run can be replayed",
  });
  const randomize = el("button", { type: "button", class: "ghost" }, "randomize");
  seedField.root.insertBefore(randomize, seedField.root.querySelector(".field-hint"));
  const iterField = numberField({
    id: `${idPrefix}-iters`,
    label: "iterations (M)",
    rule: rules.iterations,
    value: defaultIterations,
    step: 100,
  });
  const alphaField = numberField({
    id: `${idPrefix}-alpha`,
    label: "alpha",
    rule: rules.alpha,
    value: rules.alpha.default ?? 0.05,
    step: 0.005,
  });
  const root = el(
    "fieldset",
    { class: "mc-controls" },
    el("legend", {}, "simulation"),
    seedField.root,
    iterField.root,
    alphaField.root,
  );
  const controls: McControls = {
    root,
    read() {
      const seed = seedField.read();
      const iters = iterField.read();
      const alpha = alphaField.read();
      const problems = [seed.error, iters.error, alpha.error].filter(
        (e): e is string => e !== null,
      );
      if (problems.length > 0) return { mc: null, problems };
      const mc: McChoice = {
        seed: seed.value,
        alpha: alpha.value ?? 0.05,
        iterations: iters.value ?? defaultIterations,
      };
      const crossProblems = checkMc(mc);
      if (crossProblems.length > 0) return { mc: null, problems: crossProblems };
      return { mc, problems: [] };
    },
    randomizeSeed() {
      seedField.input.value = String(randomSeed());
    },
  };
  randomize.addEventListener("click", () => controls.randomizeSeed());
  return controls;
}

/** Problem list + request-failure box shared by the panels. */
export interface StatusArea {
  root: HTMLElement;
  showProblems(problems: string[]): void;
  showError(message: string): void;
  showBusy(message: string): void;
  clear(): void;
}

export function statusArea(): StatusArea {
  const root = el("div", { class: "status-area", role: "status" });
  return {
    root,
    showProblems(problems) {
      root.className = "status-area problems";
      root.textContent = problems.join("; ");
    },
    showError(message) {
      root.className = "status-area error";
      root.textContent = message;
    },
    showBusy(message) {
      root.className = "status-area busy";
      root.textContent = message;
    },
    clear() {
      root.className = "status-area";
      root.textContent = "";
    },
  };
}
