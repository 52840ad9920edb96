// Binormal designer: no pilot data, power from a generative description.
//
// Dragging any slider refreshes the anticipated AUROCs and the case and
// control score-plane contours through the cheap preview endpoint; the
// debounce coalesces movement and the release flushes immediately so the
// preview lands well inside the latency budget. The expensive power sweep
// only runs on the button.

import type { Api, BinormalParamsRequest, DensityGridPayload, ResultDocument } from "../api.js";
import { documentPoints } from "../api.js";
import { renderContourPlot } from "../charts/contour.js";
import { buildPowerChartModel, renderPowerChart } from "../charts/power_chart.js";
import { MIN_MC_N, SERVER_RULES, UNIT_SLIDER, checkBinormalParams } from "../constraints.js";
import { clear, el } from "../dom.js";
import { fmt, mcStampFromDocument, stamp, stampText } from "../format.js";
import { interpretPowerDocument } from "../interpret.js";
import { LatestGate, debounce } from "../seq.js";
import type { SliderField } from "./controls.js";
import { evalControls, mcControls, sliderField, statusArea } from "./controls.js";

const TARGET_LINE = 0.8;
const PREVIEW_RESOLUTION = 64;

// Case-study starting point: two correlated mortality models compared on
// the same patients. The 0.9 defaults for variances and correlations match
// the server's.
const PARAM_DEFS: { name: keyof BinormalParamsRequest; label: string; value: number }[] = [
  { name: "mu_case_a", label: "model A mean risk, cases", value: 0.44 },
  { name: "mu_case_b", label: "model B mean risk, cases", value: 0.41 },
  { name: "mu_ctrl_a", label: "model A mean risk, controls", value: 0.17 },
  { name: "mu_ctrl_b", label: "model B mean risk, controls", value: 0.17 },
  { name: "v_case_a", label: "model A variance share, cases", value: 0.9 },
  { name: "v_case_b", label: "model B variance share, cases", value: 0.9 },
  { name: "v_ctrl_a", label: "model A variance share, controls", value: 0.9 },
  { name: "v_ctrl_b", label: "model B variance share, controls", value: 0.9 },
  { name: "r_case", label: "score correlation, cases", value: 0.9 },
  { name: "r_ctrl", label: "score correlation, controls", value: 0.9 },
  { name: "prevalence", label: "outcome prevalence", value: 0.2 },
];

export interface BinormalPanel {
  root: HTMLElement;
  /** Issue a preview right now, as slider release does. */
  preview(): Promise<void>;
  run(): Promise<void>;
  setParam(name: keyof BinormalParamsRequest, value: number): void;
  lastPreview(): ResultDocument | null;
  lastResult(): ResultDocument | null;
}

export function createBinormalPanel(api: Api): BinormalPanel {
  const sliders = new Map<string, SliderField>();
  let lastPreviewDoc: ResultDocument | null = null;
  let lastResultDoc: ResultDocument | null = null;

  const paramGrid = el("div", { class: "form-grid params-grid" });
  for (const def of PARAM_DEFS) {
    const field = sliderField({
      id: `binormal-${def.name}`,
      label: def.label,
      rule: SERVER_RULES.binormalParams[def.name as keyof typeof SERVER_RULES.binormalParams],
      value: def.value,
      min: UNIT_SLIDER.min,
      max: UNIT_SLIDER.max,
      step: UNIT_SLIDER.step,
    });
    sliders.set(def.name, field);
    paramGrid.appendChild(field.root);
  }

  const previewStatus = statusArea();
  const aurocReadout = el("div", { class: "auroc-readout", id: "binormal-aurocs" });
  const contourHost = el("div", { class: "contour-host", id: "binormal-contours" });
  const previewAdvisory = el("p", { class: "advisory", id: "binormal-orientation" });

  const evaluate = evalControls("binormal", { grid: "100, 250, 500, 800" });
  const mc = mcControls("binormal-mc");
  const runButton = el("button", { type: "button", class: "primary" }, "run power sweep");
  const runStatus = statusArea();
  const chartHost = el("div", { class: "chart-host", id: "binormal-chart" });
  const interpretation = el("p", { class: "interpretation", id: "binormal-interpretation" });

  const root = el(
    "section",
    { class: "panel", id: "panel-binormal" },
    el("h2", {}, "Binormal designer: power without a pilot"),
    el(
      "p",
      { class: "panel-intro" },
      "Describe both models by where their predicted risks sit for cases and ",
      "controls; the contours below update live so you can see the scenario ",
      "you have specified before spending simulation time on it.",
    ),
    paramGrid,
    previewStatus.root,
    aurocReadout,
    contourHost,
    previewAdvisory,
    evaluate.root,
    mc.root,
    el("div", { class: "actions" }, runButton),
    runStatus.root,
    chartHost,
    interpretation,
  );

  const previewGate = new LatestGate();
  const sweepGate = new LatestGate();

  const readParams = (): { params: BinormalParamsRequest | null; problems: string[] } => {
    const values: Record<string, number | null> = {};
    const problems: string[] = [];
    for (const [name, field] of sliders) {
      const parsed = field.read();
      if (parsed.error) problems.push(parsed.error);
      values[name] = parsed.value;
    }
    if (problems.length === 0) {
      problems.push(...checkBinormalParams(values));
    }
    if (problems.length > 0) return { params: null, problems };
    return { params: values as unknown as BinormalParamsRequest, problems: [] };
  };

  const renderPreview = (doc: ResultDocument) => {
    lastPreviewDoc = doc;
    const results = doc.results as {
      anticipated_auroc_a: number;
      anticipated_auroc_b: number;
      contours: { case: DensityGridPayload; control: DensityGridPayload };
    };
    const inputs = doc.inputs as { grid_resolution: number };
    const trace = `closed form at grid resolution ${inputs.grid_resolution}, aucpower ${doc.tool_version}`;
    clear(aurocReadout);
    const aurocA = el(
      "div",
      { class: "auroc-value", id: "anticipated-auroc-a" },
      el("span", { class: "auroc-label" }, "anticipated AUROC, model A"),
      el("span", { class: "big-number" }, fmt(results.anticipated_auroc_a, 4)),
    );
    const aurocB = el(
      "div",
      { class: "auroc-value", id: "anticipated-auroc-b" },
      el("span", { class: "auroc-label" }, "anticipated AUROC, model B"),
      el("span", { class: "big-number" }, fmt(results.anticipated_auroc_b, 4)),
    );
    stamp(aurocA, trace);
    stamp(aurocB, trace);
    aurocReadout.append(aurocA, aurocB);
    clear(contourHost);
    contourHost.appendChild(
      renderContourPlot(results.contours.case, { title: "cases", stampText: trace }),
    );
    contourHost.appendChild(
      renderContourPlot(results.contours.control, { title: "controls", stampText: trace }),
    );
    previewAdvisory.textContent = doc.advisories.join(" ");
  };

  const preview = async (): Promise<void> => {
    const { params, problems } = readParams();
    if (params === null) {
      previewStatus.showProblems(problems);
      return;
    }
    previewStatus.clear();
    const outcome = await previewGate.run(() =>
      api.binormalPreview({ params, grid_resolution: PREVIEW_RESOLUTION }),
    );
    if (!outcome.current) return; // a newer drag superseded this preview
    if (outcome.error) {
      previewStatus.showError(describePreviewError(outcome.error));
      return;
    }
    renderPreview(outcome.value as ResultDocument);
  };

  const debouncedPreview = debounce(() => void preview(), 150);
  for (const field of sliders.values()) {
    field.onInput = () => debouncedPreview();
    field.onChange = () => debouncedPreview.flush();
  }

  const renderResult = (doc: ResultDocument) => {
    lastResultDoc = doc;
    clear(chartHost);
    const mcStamp = mcStampFromDocument(doc);
    const trace = mcStamp ? stampText(mcStamp) : "";
    const results = doc.results as {
      anticipated_auroc_a: number;
      anticipated_auroc_b: number;
    };
    const header = el(
      "div",
      { class: "detail" },
      `anticipated AUROCs entering the sweep: model A ${fmt(results.anticipated_auroc_a, 4)}, ` +
        `model B ${fmt(results.anticipated_auroc_b, 4)}`,
    );
    if (trace) stamp(header, trace);
    chartHost.appendChild(header);
    const model = buildPowerChartModel(documentPoints(doc), TARGET_LINE);
    if (model.points.length > 0) {
      chartHost.appendChild(renderPowerChart(model, { stampText: trace }));
    }
    interpretation.textContent = interpretPowerDocument(doc, TARGET_LINE);
    if (trace) stamp(interpretation, trace);
  };

  const run = async (): Promise<void> => {
    const { params, problems } = readParams();
    const evalRead = evaluate.read(MIN_MC_N);
    const mcRead = mc.read();
    const allProblems = [...problems, ...evalRead.problems, ...mcRead.problems];
    if (allProblems.length > 0 || params === null || evalRead.choice === null || mcRead.mc === null) {
      runStatus.showProblems(allProblems);
      return;
    }
    runStatus.showBusy("simulating studies...");
    runButton.disabled = true;
    const choice = evalRead.choice;
    const mcChoice = mcRead.mc;
    const outcome = await sweepGate.run(() =>
      api.powerBinormal({
        params,
        n: choice.mode === "fixed-n" ? (choice.n as number) : undefined,
        n_grid: choice.mode === "curve" ? (choice.nGrid as number[]) : undefined,
        target_power: choice.mode === "target-power" ? (choice.targetPower as number) : undefined,
        n_min: choice.mode === "target-power" ? choice.nMin : undefined,
        n_max: choice.mode === "target-power" ? choice.nMax : undefined,
        mc: {
          seed: mcChoice.seed ?? undefined,
          alpha: mcChoice.alpha,
          iterations: mcChoice.iterations,
        },
      }),
    );
    runButton.disabled = sweepGate.busy;
    if (!outcome.current) return;
    if (outcome.error) {
      runStatus.showError(describePreviewError(outcome.error));
      return;
    }
    runStatus.clear();
    renderResult(outcome.value as ResultDocument);
  };

  runButton.addEventListener("click", () => void run());

  return {
    root,
    preview,
    run,
    setParam(name, value) {
      const field = sliders.get(name);
      if (field) field.set(value);
    },
    lastPreview: () => lastPreviewDoc,
    lastResult: () => lastResultDoc,
  };
}

function describePreviewError(error: unknown): string {
  if (error instanceof Error) return error.message;
  return "request failed";
}
