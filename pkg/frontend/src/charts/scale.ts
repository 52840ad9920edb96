// Linear scales and tick generation for the hand-rolled SVG charts.

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
  invert(pixel: number): number;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  scale.range = range;
  scale.invert = (pixel: number) => d0 + ((pixel - r0) / (r1 - r0 || 1)) * span;
  return scale;
}

/** Round ticks at a 1/2/5 step covering the domain, endpoints included. */
export function ticks(domain: [number, number], count = 5): number[] {
  const [lo, hi] = domain;
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / Math.max(1, count);
  const magnitude = 10 ** Math.floor(Math.log10(rawStep));
  const residual = rawStep / magnitude;
  let step: number;
  if (residual >= 5) step = 5 * magnitude;
  else if (residual >= 2) step = 2 * magnitude;
  else step = magnitude;
  const out: number[] = [];
  const start = Math.ceil(lo / step) * step;
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    // trim float drift so tick labels stay short
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

/** Extend a [lo, hi] interval by a fraction on both sides. */
export function padDomain(domain: [number, number], fraction = 0.05): [number, number] {
  const [lo, hi] = domain;
  const pad = (hi - lo || 1) * fraction;
  return [lo - pad, hi + pad];
}
