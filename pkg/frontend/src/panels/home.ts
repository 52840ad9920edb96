// Home panel: what the tool answers and which calculator to pick.

import type { Api } from "../api.js";
import { el } from "../dom.js";

export function createHomePanel(api: Api, navigate: (hash: string) => void): HTMLElement {
  const version = el("span", { class: "version-badge", id: "service-version" }, "");
  void api
    .health()
    .then((h) => {
      version.textContent = `service ${h.version}`;
    })
    .catch(() => {
      version.textContent = "service unreachable";
    });

  const card = (hash: string, title: string, body: string, question: string) => {
    const button = el("button", { type: "button", class: "card-link" }, "open");
    button.addEventListener("click", () => navigate(hash));
    return el(
      "div",
      { class: "home-card" },
      el("h3", {}, title),
      el("p", { class: "card-question" }, question),
      el("p", {}, body),
      button,
    );
  };

  return el(
    "section",
    { class: "panel", id: "panel-home" },
    el("h2", {}, "Plan an external validation study ", version),
    el(
      "p",
      { class: "panel-intro" },
      "Three calculators for sizing AUROC studies. Every number on screen ",
      "comes from the server and carries the seed, iteration count and alpha ",
      "that produced it, so any result can be replayed from the command line.",
    ),
    el(
      "div",
      { class: "home-grid" },
      card(
        "#/single",
        "Single model",
        "A closed-form sample size from anticipated AUROC, outcome prevalence " +
          "and the confidence-interval width you can accept.",
        "How many patients to pin down one model's AUROC?",
      ),
      card(
        "#/pilot",
        "Pilot comparison",
        "Upload pilot predictions from two models on the same patients; the " +
          "pilot is resampled at candidate study sizes to estimate the power " +
          "of the paired comparison, optionally reweighted to a different " +
          "prevalence.",
        "I have pilot data: can a study tell my two models apart?",
      ),
      card(
        "#/binormal",
        "Binormal designer",
        "No pilot yet: describe where each model's risks sit for cases and " +
          "controls, watch the implied score distributions and anticipated " +
          "AUROCs live, then simulate the study.",
        "No pilot data: what would it take under assumed distributions?",
      ),
    ),
  );
}
