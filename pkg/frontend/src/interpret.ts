// Plain-language readings of power result documents.
//
// The sentences restate what the service computed without adding any
// arithmetic beyond rounding an expected event count; numbers quoted here
// are taken verbatim from the document.

import type { PowerPoint, ResultDocument } from "./api.js";
import { documentPoints } from "./api.js";
import { fmt, fmtPercent } from "./format.js";

function expectedEvents(n: number, prevalence: number | null): string {
  if (prevalence === null) return "";
  return ` (about ${Math.round(n * prevalence)} outcome events at prevalence ${fmt(prevalence)})`;
}

function alphaOf(doc: ResultDocument): number {
  const mc = doc.inputs["mc"] as { alpha: number } | undefined;
  return mc?.alpha ?? 0.05;
}

/** Prevalence the evaluation actually used, if the document carries one. */
export function effectivePrevalence(doc: ResultDocument): number | null {
  const override = doc.inputs["prevalence_override"];
  if (typeof override === "number") return override;
  const pilot = doc.inputs["pilot"] as { prevalence: number } | undefined;
  if (pilot) return pilot.prevalence;
  const params = doc.inputs["params"] as { prevalence: number } | undefined;
  if (params) return params.prevalence;
  return null;
}

export function interpretPowerDocument(doc: ResultDocument, target = 0.8): string {
  const alpha = alphaOf(doc);
  const prevalence = effectivePrevalence(doc);
  const results = doc.results as {
    power?: PowerPoint;
    curve?: PowerPoint[];
    min_n?: { n: number; target_power: number; achieved: PowerPoint };
  };
  if (results.min_n) {
    const found = results.min_n;
    return (
      `The smallest sample size reaching ${fmtPercent(found.target_power, 0)} power is ` +
      `about N = ${found.n}${expectedEvents(found.n, prevalence)}; estimated power there is ` +
      `${fmtPercent(found.achieved.power)} (MC se ${fmtPercent(found.achieved.mc_se)}) ` +
      `at alpha ${fmt(alpha)}.`
    );
  }
  if (results.curve) {
    const points = documentPoints(doc);
    const first = points[0] as PowerPoint;
    const last = points[points.length - 1] as PowerPoint;
    let sentence =
      `Across the evaluated sizes, estimated power goes from ${fmtPercent(first.power)} ` +
      `at N = ${first.n} to ${fmtPercent(last.power)} at N = ${last.n} at alpha ${fmt(alpha)}.`;
    const hit = points.find((p) => p.power >= target);
    if (hit) {
      sentence +=
        ` The smallest evaluated size reaching the ${fmtPercent(target, 0)} target is ` +
        `N = ${hit.n}${expectedEvents(hit.n, prevalence)}.`;
    } else {
      sentence += ` No evaluated size reaches the ${fmtPercent(target, 0)} target.`;
    }
    return sentence;
  }
  if (results.power) {
    const point = results.power;
    return (
      `At N = ${point.n}${expectedEvents(point.n, prevalence)}, the estimated power to ` +
      `detect the AUROC difference is ${fmtPercent(point.power)} ` +
      `(MC se ${fmtPercent(point.mc_se)}) at alpha ${fmt(alpha)}.`
    );
  }
  return "The service returned no power estimates.";
}
