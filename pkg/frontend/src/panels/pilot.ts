// Pilot panel: upload a labelled pilot CSV, sweep power over study sizes.
//
// The CSV goes to the server untouched; parsing, reweighting and the
// Monte Carlo all happen there, and parse failures come back with row
// numbers that are shown verbatim. One sweep runs at a time; changing the
// prevalence slider while one is in flight queues a rerun with the newest
// form state instead of stacking requests.

import type { Api, AurocPayload, ResultDocument } from "../api.js";
import { documentPoints } from "../api.js";
import { UNIT_SLIDER, SERVER_RULES } from "../constraints.js";
import { append, clear, el } from "../dom.js";
import { fmt, fmtPercent, mcStampFromDocument, stamp, stampText } from "../format.js";
import { interpretPowerDocument } from "../interpret.js";
import { buildPowerChartModel, renderPowerChart } from "../charts/power_chart.js";
import { LatestGate } from "../seq.js";
import { describeError } from "./single.js";
import { evalControls, mcControls, sliderField, statusArea } from "./controls.js";

const TARGET_LINE = 0.8;

export interface PilotPanel {
  root: HTMLElement;
  /** Hand the panel CSV text, as the file input or a test would. */
  loadCsv(text: string, filename: string): void;
  run(): Promise<void>;
  /** The last rendered document, for tests and debugging. */
  lastDocument(): ResultDocument | null;
}

export function createPilotPanel(api: Api): PilotPanel {
  let csv: { text: string; filename: string } | null = null;
  let lastDoc: ResultDocument | null = null;
  let hasRun = false;
  let rerunQueued = false;

  const fileInput = el("input", { type: "file", id: "pilot-file", accept: ".csv,text/csv" });
  const fileLabel = el("span", { class: "file-name" }, "no file loaded");
  const lenientBox = el("input", { type: "checkbox", id: "pilot-lenient" });

  const overrideBox = el("input", { type: "checkbox", id: "pilot-override" });
  const prevalenceSlider = sliderField({
    id: "pilot-prevalence",
    label: "prevalence override",
    rule: SERVER_RULES.pilot.prevalence,
    value: 0.2,
    min: UNIT_SLIDER.min,
    max: UNIT_SLIDER.max,
    step: UNIT_SLIDER.step,
  });
  prevalenceSlider.root.classList.add("disabled");
  prevalenceSlider.slider.disabled = true;
  prevalenceSlider.number.disabled = true;

  const evaluate = evalControls("pilot");
  const mc = mcControls("pilot-mc");
  const runButton = el("button", { type: "button", class: "primary" }, "run power analysis");
  const status = statusArea();
  const summaryCard = el("div", { class: "result-card", id: "pilot-summary" });
  const chartHost = el("div", { class: "chart-host", id: "pilot-chart" });
  const interpretation = el("p", { class: "interpretation", id: "pilot-interpretation" });
  const advisoriesList = el("ul", { class: "advisories", id: "pilot-advisories" });

  const root = el(
    "section",
    { class: "panel", id: "panel-pilot" },
    el("h2", {}, "Pilot comparison: power from your own test set"),
    el(
      "p",
      { class: "panel-intro" },
      "Upload pilot predictions from two models with outcome labels ",
      "(columns label, pred_a, pred_b by default). The study population is ",
      "resampled from the pilot at each candidate size to estimate the power ",
      "of the paired AUROC comparison.",
    ),
    el(
      "div",
      { class: "file-row" },
      fileInput,
      fileLabel,
      el("label", { class: "checkbox" }, lenientBox, "lenient parsing (drop bad rows)"),
    ),
    el(
      "div",
      { class: "override-row" },
      el("label", { class: "checkbox" }, overrideBox, "override prevalence"),
      prevalenceSlider.root,
    ),
    evaluate.root,
    mc.root,
    el("div", { class: "actions" }, runButton),
    status.root,
    summaryCard,
    chartHost,
    interpretation,
    advisoriesList,
  );

  const gate = new LatestGate();

  const loadCsv = (text: string, filename: string) => {
    csv = { text, filename };
    fileLabel.textContent = `${filename} (${text.length} bytes)`;
    hasRun = false;
    status.clear();
  };

  fileInput.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    const reader = new FileReader();
    reader.onload = () => loadCsv(String(reader.result ?? ""), file.name);
    reader.onerror = () => status.showError(`could not read ${file.name}`);
    reader.readAsText(file);
  });

  overrideBox.addEventListener("change", () => {
    const on = overrideBox.checked;
    prevalenceSlider.slider.disabled = !on;
    prevalenceSlider.number.disabled = !on;
    prevalenceSlider.root.classList.toggle("disabled", !on);
    maybeRerun();
  });

  // Releasing the slider re-issues the sweep with the new weighting.
  prevalenceSlider.onChange = () => {
    if (overrideBox.checked) maybeRerun();
  };

  const maybeRerun = () => {
    if (!hasRun || csv === null) return;
    if (gate.busy) {
      rerunQueued = true;
      return;
    }
    void run();
  };

  const renderSummary = (doc: ResultDocument) => {
    clear(summaryCard);
    const pilot = doc.inputs["pilot"] as {
      n_rows: number;
      n_cases: number;
      n_controls: number;
      prevalence: number;
      auroc_a: AurocPayload | null;
      auroc_b: AurocPayload | null;
      rows_dropped: number;
    };
    const rows = el(
      "div",
      { class: "detail" },
      `${pilot.n_rows} rows: ${pilot.n_cases} cases, ${pilot.n_controls} controls ` +
        `(prevalence ${fmt(pilot.prevalence, 3)})` +
        (pilot.rows_dropped > 0 ? `; ${pilot.rows_dropped} dropped` : ""),
    );
    const aurocLine = (label: string, est: AurocPayload | null) =>
      el(
        "div",
        { class: "detail" },
        est === null
          ? `${label}: AUROC not estimable (boundary estimate)`
          : `${label}: AUROC ${fmt(est.theta_hat, 3)} ` +
              `(95% CI ${fmt(est.ci_low, 3)} to ${fmt(est.ci_high, 3)})`,
      );
    const override = doc.inputs["prevalence_override"];
    append(
      summaryCard,
      el("h3", {}, "pilot summary"),
      rows,
      aurocLine("model A", pilot.auroc_a),
      aurocLine("model B", pilot.auroc_b),
      typeof override === "number"
        ? el("div", { class: "detail" }, `evaluated at overridden prevalence ${fmt(override, 3)}`)
        : null,
    );
  };

  const renderResult = (doc: ResultDocument) => {
    lastDoc = doc;
    renderSummary(doc);
    clear(chartHost);
    const mcStamp = mcStampFromDocument(doc);
    const trace = mcStamp ? stampText(mcStamp) : "";
    const model = buildPowerChartModel(documentPoints(doc), TARGET_LINE);
    if (model.points.length > 0) {
      chartHost.appendChild(renderPowerChart(model, { stampText: trace }));
    }
    interpretation.textContent = interpretPowerDocument(doc, TARGET_LINE);
    if (trace) stamp(interpretation, trace);
    clear(advisoriesList);
    for (const advisory of doc.advisories) {
      advisoriesList.appendChild(el("li", { class: "advisory" }, advisory));
    }
  };

  const run = async (): Promise<void> => {
    if (csv === null) {
      status.showProblems(["load a pilot CSV first"]);
      return;
    }
    const evalRead = evaluate.read();
    const mcRead = mc.read();
    const problems = [...evalRead.problems, ...mcRead.problems];
    let prevalence: number | undefined;
    if (overrideBox.checked) {
      const parsed = prevalenceSlider.read();
      if (parsed.error) problems.push(parsed.error);
      else if (parsed.value !== null) prevalence = parsed.value;
    }
    if (problems.length > 0 || evalRead.choice === null || mcRead.mc === null) {
      status.showProblems(problems);
      return;
    }
    status.showBusy("resampling the pilot...");
    runButton.disabled = true;
    const choice = evalRead.choice;
    const request = {
      csvText: csv.text,
      filename: csv.filename,
      n: choice.mode === "fixed-n" ? (choice.n as number) : undefined,
      n_grid: choice.mode === "curve" ? (choice.nGrid as number[]) : undefined,
      target_power: choice.mode === "target-power" ? (choice.targetPower as number) : undefined,
      n_min: choice.mode === "target-power" ? choice.nMin : undefined,
      n_max: choice.mode === "target-power" ? choice.nMax : undefined,
      mc: {
        seed: mcRead.mc.seed ?? undefined,
        alpha: mcRead.mc.alpha,
        iterations: mcRead.mc.iterations,
      },
      prevalence,
      lenient: lenientBox.checked || undefined,
    };
    const outcome = await gate.run(() => api.powerPilotUpload(request));
    runButton.disabled = gate.busy;
    if (outcome.current) {
      if (outcome.error) {
        status.showError(describeError(outcome.error));
      } else {
        status.clear();
        hasRun = true;
        renderResult(outcome.value as ResultDocument);
      }
    }
    if (rerunQueued) {
      rerunQueued = false;
      void run();
    }
  };

  runButton.addEventListener("click", () => void run());

  return {
    root,
    loadCsv,
    run,
    lastDocument: () => lastDoc,
  };
}
