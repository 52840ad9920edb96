// Number formatting and result traceability.
//
// Every displayed number carries the run that produced it: hovering a
// stamped element reveals seed, iteration count and alpha, so any figure
// on screen can be reproduced with the CLI.

export function fmt(value: number | null | undefined, digits = 4): string {
  if (value === null || value === undefined) return "-";
  if (Number.isInteger(value) && Math.abs(value) < 1e15) return String(value);
  return value.toPrecision(digits).replace(/\.?0+(?=$|e)/, "");
}

export function fmtPercent(value: number | null | undefined, digits = 1): string {
  if (value === null || value === undefined) return "-";
  return `${(100 * value).toFixed(digits)}%`;
}

export interface RunStamp {
  seed: number;
  iterations: number;
  alpha: number;
}

export function stampText(stamp: RunStamp): string {
  return `seed ${stamp.seed}, M ${stamp.iterations}, alpha ${stamp.alpha}`;
}

export function mcStampFromDocument(doc: {
  inputs: Record<string, unknown>;
}): RunStamp | null {
  const mc = doc.inputs["mc"] as
    | { seed: number; iterations: number; alpha: number }
    | undefined;
  if (!mc) return null;
  return { seed: mc.seed, iterations: mc.iterations, alpha: mc.alpha };
}

/** Attach the reproducibility stamp to an element showing a result. */
export function stamp(element: HTMLElement | SVGElement, text: string): void {
  element.setAttribute("title", text);
  element.setAttribute("data-stamp", text);
}
