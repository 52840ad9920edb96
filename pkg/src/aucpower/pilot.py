"""Power for comparing two models by resampling a pilot dataset.

Each simulation iteration draws ``n_eval`` rows from the pilot with
replacement, uniformly or weighted so the expected case fraction equals
a chosen prevalence, and applies the paired DeLong test to the resample.
Power is the fraction of iterations whose p-value falls below alpha.

Unlike bootstrapping, ``n_eval`` is free: it may exceed the pilot size,
since the point is to ask what a *future* validation study of that size
would detect.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._validation import check_open_unit, check_paired
from .delong import _fast_core
from .errors import DegenerateComparisonError, DomainError, PilotTooDegenerateError
from .mc import (
    McConfig,
    MinSampleSizeResult,
    PowerCurve,
    PowerEstimate,
    estimate_power,
    min_n_search,
    power_curve,
)


@dataclass(frozen=True)
class PilotDataset:
    """Aligned labels and paired model scores from a pilot test set.

    Arrays are validated, copied, and frozen on construction; instances are
    safe to share across threads.
    """

    labels: np.ndarray
    scores_a: np.ndarray
    scores_b: np.ndarray

    def __post_init__(self):
        y, (sa, sb) = check_paired(
            self.labels, self.scores_a, self.scores_b, names=("scores_a", "scores_b")
        )
        for name, arr in (("labels", y), ("scores_a", sa), ("scores_b", sb)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def n_rows(self) -> int:
        return int(self.labels.shape[0])

    @property
    def n_cases(self) -> int:
        return int(self.labels.sum())

    @property
    def n_controls(self) -> int:
        return self.n_rows - self.n_cases

    @property
    def prevalence(self) -> float:
        return self.n_cases / self.n_rows


def resampling_weights(labels: np.ndarray, phi: float) -> np.ndarray:
    """Per-row sampling weights that shift the expected prevalence to phi.

    Each case gets weight phi / n_cases and each control
    (1 - phi) / n_controls, so the weights sum to 1 and the weighted case
    fraction equals phi exactly.
    """
    phi = check_open_unit(phi, "phi")
    y = np.asarray(labels, dtype=np.float64)
    n_cases = y.sum()
    n_controls = y.shape[0] - n_cases
    if n_cases == 0 or n_controls == 0:
        raise DomainError("weights need at least one case and one control")
    return phi * y / n_cases + (1.0 - phi) * (1.0 - y) / n_controls


def _resample_power(
    pilot: PilotDataset,
    n_eval: int,
    cfg: McConfig,
    weights: np.ndarray | None,
    threads: int | None,
) -> PowerEstimate:
    n_eval = int(n_eval)
    if n_eval < 2:
        raise DomainError(f"n_eval must be at least 2, got {n_eval}")
    y = pilot.labels
    sa = pilot.scores_a
    sb = pilot.scores_b
    n_rows = pilot.n_rows

    def draw_and_test(rng: np.random.Generator):
        if weights is None:
            idx = rng.integers(0, n_rows, size=n_eval)
        else:
            idx = rng.choice(n_rows, size=n_eval, replace=True, p=weights)
        ys = y[idx]
        k = int(ys.sum())
        if k == 0 or k == n_eval:
            return None
        try:
            comparison = _fast_core(ys, sa[idx], sb[idx])
        except DegenerateComparisonError:
            return None
        return comparison.p_value < cfg.alpha

    return estimate_power(
        n_eval, cfg, draw_and_test, exhausted_error=PilotTooDegenerateError, threads=threads
    )


def power_pilot(
    pilot: PilotDataset, n_eval: int, cfg: McConfig, *, threads: int | None = None
) -> PowerEstimate:
    """Power at sample size n_eval from uniform resampling of the pilot."""
    return _resample_power(pilot, n_eval, cfg, weights=None, threads=threads)


def power_pilot_reweighted(
    pilot: PilotDataset,
    n_eval: int,
    phi: float,
    cfg: McConfig,
    *,
    threads: int | None = None,
) -> PowerEstimate:
    """Like :func:`power_pilot`, but resamples at target prevalence phi."""
    w = resampling_weights(pilot.labels, phi)
    return _resample_power(pilot, n_eval, cfg, weights=w, threads=threads)


def power_curve_pilot(
    pilot: PilotDataset,
    n_grid: Sequence[int],
    cfg: McConfig,
    *,
    phi: float | None = None,
    threads: int | None = None,
) -> PowerCurve:
    """One power estimate per grid point; deterministic for a fixed seed."""
    w = resampling_weights(pilot.labels, phi) if phi is not None else None

    def evaluate(n: int) -> PowerEstimate:
        return _resample_power(pilot, n, cfg, weights=w, threads=threads)

    return power_curve(n_grid, cfg, evaluate, prevalence_override=phi)


def min_n_for_power(
    pilot: PilotDataset,
    target_power: float,
    cfg: McConfig,
    n_min: int = 20,
    n_max: int = 5000,
    *,
    phi: float | None = None,
    threads: int | None = None,
) -> MinSampleSizeResult:
    """Search for the smallest n reaching target power (e.g. 0.8)."""
    w = resampling_weights(pilot.labels, phi) if phi is not None else None

    def evaluate(n: int) -> PowerEstimate:
        return _resample_power(pilot, n, cfg, weights=w, threads=threads)

    return min_n_search(target_power, n_min, n_max, evaluate)
