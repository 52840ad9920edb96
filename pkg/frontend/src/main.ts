// Entry point: tab navigation over the four panels, hash routed.

import { Api } from "./api.js";
import { clear, el } from "./dom.js";
import { createBinormalPanel } from "./panels/binormal.js";
import { createHomePanel } from "./panels/home.js";
import { createPilotPanel } from "./panels/pilot.js";
import { createSinglePanel } from "./panels/single.js";

interface PanelEntry {
  hash: string;
  label: string;
  root: HTMLElement;
}

export function mountApp(host: HTMLElement, api: Api = new Api("")): void {
  const navigate = (hash: string) => {
    window.location.hash = hash;
    activate(hash);
  };

  const panels: PanelEntry[] = [
    { hash: "#/home", label: "Home", root: createHomePanel(api, navigate) },
    { hash: "#/single", label: "Single model", root: createSinglePanel(api).root },
    { hash: "#/pilot", label: "Pilot comparison", root: createPilotPanel(api).root },
    { hash: "#/binormal", label: "Binormal designer", root: createBinormalPanel(api).root },
  ];

  const tabs = panels.map((panel) => {
    const tab = el("button", { type: "button", class: "tab" }, panel.label);
    tab.addEventListener("click", () => navigate(panel.hash));
    return tab;
  });
  const nav = el("nav", { class: "tabs" }, ...tabs);
  const main = el("main", { class: "panel-host" }, ...panels.map((p) => p.root));

  const activate = (hash: string) => {
    const target = panels.find((p) => p.hash === hash) ?? (panels[0] as PanelEntry);
    panels.forEach((panel, i) => {
      panel.root.style.display = panel === target ? "" : "none";
      (tabs[i] as HTMLElement).classList.toggle("active", panel === target);
    });
  };

  clear(host);
  host.append(
    el(
      "header",
      { class: "app-header" },
      el("h1", {}, "aucpower"),
      el("p", { class: "tagline" }, "sample size and power for AUROC validation studies"),
    ),
    nav,
    main,
  );
  window.addEventListener("hashchange", () => activate(window.location.hash));
  activate(window.location.hash || "#/home");
}

const autoHost = typeof document !== "undefined" ? document.getElementById("app") : null;
if (autoHost) {
  mountApp(autoHost);
}
