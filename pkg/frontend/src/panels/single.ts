// Single-model panel: sample size for a target AUROC confidence width.
//
// The calculation is a deterministic formula inversion, cheap enough to
// re-run live as the form changes; there is no seed to track, so results
// are stamped with the exact inputs instead.

import type { Api, ResultDocument } from "../api.js";
import { ApiError } from "../api.js";
import { SERVER_RULES, checkSingle } from "../constraints.js";
import { clear, el } from "../dom.js";
import { fmt, stamp } from "../format.js";
import { LatestGate, debounce } from "../seq.js";
import { numberField, statusArea } from "./controls.js";

export interface SinglePanel {
  root: HTMLElement;
  /** Validate and, when clean, request; resolves when the card settles. */
  run(): Promise<void>;
}

export function createSinglePanel(api: Api): SinglePanel {
  const rules = SERVER_RULES.single;
  const aurocField = numberField({
    id: "single-auroc",
    label: "anticipated AUROC",
    rule: rules.auroc,
    value: 0.75,
    step: 0.01,
  });
  const prevalenceField = numberField({
    id: "single-prevalence",
    label: "outcome prevalence",
    rule: rules.prevalence,
    value: 0.2,
    step: 0.01,
  });
  const widthField = numberField({
    id: "single-width",
    label: "confidence interval width",
    rule: rules.ci_width,
    value: 0.1,
    step: 0.01,
    hint: "full width of the 95% interval around the AUROC",
  });
  const runButton = el("button", { type: "button", class: "primary" }, "calculate");
  const status = statusArea();
  const resultCard = el("div", { class: "result-card", id: "single-result" });

  const root = el(
    "section",
    { class: "panel", id: "panel-single" },
    el("h2", {}, "Single model: precision sample size"),
    el(
      "p",
      { class: "panel-intro" },
      "How many patients does an external validation need so the AUROC ",
      "confidence interval comes out no wider than you can tolerate?",
    ),
    el("div", { class: "form-grid" }, aurocField.root, prevalenceField.root, widthField.root),
    el("div", { class: "actions" }, runButton),
    status.root,
    resultCard,
  );

  const gate = new LatestGate();

  const render = (doc: ResultDocument) => {
    clear(resultCard);
    const results = doc.results as {
      n_total: number;
      n_events: number;
      se_achieved: number;
      target_se: number;
    };
    const inputs = doc.inputs as { auroc: number; prevalence: number; ci_width: number };
    const stampText =
      `exact calculation, no simulation; AUROC ${inputs.auroc}, ` +
      `prevalence ${inputs.prevalence}, width ${inputs.ci_width}; aucpower ${doc.tool_version}`;
    const headline = el(
      "div",
      { class: "headline" },
      el("span", { class: "big-number", id: "single-n-total" }, String(results.n_total)),
      el("span", { class: "big-label" }, "patients"),
    );
    stamp(headline, stampText);
    const events = el(
      "div",
      { class: "sub-number" },
      `${results.n_events} outcome events expected at prevalence ${fmt(inputs.prevalence)}`,
    );
    stamp(events, stampText);
    const seLine = el(
      "div",
      { class: "detail" },
      `achieved standard error ${fmt(results.se_achieved, 4)} (target ${fmt(results.target_se, 4)})`,
    );
    stamp(seLine, stampText);
    resultCard.append(headline, events, seLine);
    for (const advisory of doc.advisories) {
      resultCard.appendChild(el("div", { class: "advisory" }, advisory));
    }
  };

  const run = async (): Promise<void> => {
    const auroc = aurocField.read();
    const prevalence = prevalenceField.read();
    const width = widthField.read();
    const values = {
      auroc: auroc.value,
      prevalence: prevalence.value,
      ci_width: width.value,
    };
    const problems = [auroc.error, prevalence.error, width.error].filter(
      (e): e is string => e !== null,
    );
    if (problems.length === 0) {
      problems.push(...checkSingle(values));
    }
    if (problems.length > 0) {
      status.showProblems(problems);
      return;
    }
    status.clear();
    const outcome = await gate.run(() =>
      api.sampleSizeSingle({
        auroc: values.auroc as number,
        prevalence: values.prevalence as number,
        ci_width: values.ci_width as number,
      }),
    );
    if (!outcome.current) return;
    if (outcome.error) {
      status.showError(describeError(outcome.error));
      return;
    }
    render(outcome.value as ResultDocument);
  };

  const liveRun = debounce(() => void run(), 200);
  for (const field of [aurocField, prevalenceField, widthField]) {
    field.input.addEventListener("input", () => liveRun());
    field.input.addEventListener("change", () => liveRun.flush());
  }
  runButton.addEventListener("click", () => {
    liveRun.cancel();
    void run();
  });

  return { root, run };
}

export function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    return `the service rejected the request: ${error.message}`;
  }
  if (error instanceof Error) {
    return `request failed: ${error.message}`;
  }
  return "request failed";
}
