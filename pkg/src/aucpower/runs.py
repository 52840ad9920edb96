"""One entry point per calculation, shared by the CLI and the HTTP service.

Each runner maps fully-resolved inputs to a finished result document.
Routing both interfaces through the same functions is what guarantees they
return identical documents for identical inputs and seeds.
"""

from __future__ import annotations

from typing import Sequence

from . import report
from .binormal import (
    BinormalSpec,
    density_contours,
    min_n_for_power_binormal,
    power_binormal,
    power_curve_binormal,
)
from .ingest import PilotSummary
from .mc import McConfig
from .pilot import (
    PilotDataset,
    min_n_for_power,
    power_curve_pilot,
    power_pilot,
    power_pilot_reweighted,
)
from .single import SingleSizeRequest, sample_size_single

DEFAULT_N_MIN = 20
DEFAULT_N_MAX = 5000


def run_single(theta: float, phi: float, ci_width: float) -> dict:
    req = SingleSizeRequest(theta=theta, phi=phi, ci_width=ci_width)
    return report.single_size_document(req, sample_size_single(req))


def run_pilot(
    pilot: PilotDataset,
    summary: PilotSummary,
    cfg: McConfig,
    *,
    n: int | None = None,
    n_grid: Sequence[int] | None = None,
    target_power: float | None = None,
    n_min: int = DEFAULT_N_MIN,
    n_max: int = DEFAULT_N_MAX,
    prevalence: float | None = None,
    threads: int | None = None,
) -> dict:
    evaluate = report.evaluate_payload(n, n_grid, target_power, n_min, n_max)
    if n is not None:
        if prevalence is None:
            outcome = power_pilot(pilot, n, cfg, threads=threads)
        else:
            outcome = power_pilot_reweighted(pilot, n, prevalence, cfg, threads=threads)
    elif n_grid is not None:
        outcome = power_curve_pilot(pilot, n_grid, cfg, phi=prevalence, threads=threads)
    elif target_power is not None:
        outcome = min_n_for_power(
            pilot, target_power, cfg, n_min, n_max, phi=prevalence, threads=threads
        )
    else:
        raise TypeError("one of n, n_grid, target_power is required")
    return report.pilot_power_document(summary, cfg, evaluate, outcome, prevalence)


def run_binormal(
    spec: BinormalSpec,
    cfg: McConfig,
    *,
    n: int | None = None,
    n_grid: Sequence[int] | None = None,
    target_power: float | None = None,
    n_min: int = DEFAULT_N_MIN,
    n_max: int = DEFAULT_N_MAX,
    threads: int | None = None,
) -> dict:
    evaluate = report.evaluate_payload(n, n_grid, target_power, n_min, n_max)
    if n is not None:
        outcome = power_binormal(spec, n, cfg, threads=threads)
    elif n_grid is not None:
        outcome = power_curve_binormal(spec, n_grid, cfg, threads=threads)
    elif target_power is not None:
        outcome = min_n_for_power_binormal(
            spec, target_power, cfg, n_min, n_max, threads=threads
        )
    else:
        raise TypeError("one of n, n_grid, target_power is required")
    return report.binormal_power_document(spec, cfg, evaluate, outcome)


def run_preview(spec: BinormalSpec, grid_resolution: int = 64) -> dict:
    case = density_contours(spec, "case", grid_resolution)
    control = density_contours(spec, "control", grid_resolution)
    return report.binormal_preview_document(spec, grid_resolution, case, control)
