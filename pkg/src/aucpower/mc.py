"""Monte Carlo machinery shared by the pilot and parametric power modules.

Determinism contract: a master seed deterministically derives one
independent random substream per iteration index. An iteration's outcome
depends only on its own substream, and the aggregate is a count, so serial
and thread-pooled runs produce bitwise-identical results.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import AucPowerError, DomainError, TargetUnreachableError

THREADS_ENV_VAR = "AUCPOWER_THREADS"

# An iteration callback draws one dataset from its substream and returns
# True (null rejected), False (not rejected), or None (untestable draw,
# e.g. a single-class resample -- redraw from the same substream).
DrawAndTest = Callable[[np.random.Generator], Optional[bool]]


@dataclass(frozen=True)
class McConfig:
    """Simulation settings: significance level, iteration count, seed."""

    seed: int
    alpha: float = 0.05
    iterations: int = 2000
    max_redraws_per_iteration: int = 100

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie strictly between 0 and 1, got {self.alpha}")
        if int(self.iterations) < 1:
            raise DomainError("iterations must be at least 1")
        if int(self.max_redraws_per_iteration) < 0:
            raise DomainError("max_redraws_per_iteration must be nonnegative")


@dataclass(frozen=True)
class PowerEstimate:
    """Estimated power at one sample size, with its binomial MC error."""

    n: int
    power: float
    mc_se: float
    degenerate_draws: int


@dataclass(frozen=True)
class PowerCurve:
    """Power estimates over a strictly increasing sample-size grid."""

    points: tuple[PowerEstimate, ...]
    config: McConfig
    prevalence_override: float | None = None

    def __post_init__(self):
        ns = [p.n for p in self.points]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise DomainError("power-curve points must be strictly increasing in n")


@dataclass(frozen=True)
class MinSampleSizeResult:
    """Smallest evaluated n whose power estimate reached the target.

    ``evaluated`` keeps every (n, power, mc_se) probed during the search so
    callers can judge how close the decision sits to the MC noise floor.
    """

    n: int
    target_power: float
    achieved: PowerEstimate
    evaluated: tuple[PowerEstimate, ...] = field(repr=False)


def substream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for one iteration of a seeded simulation."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def resolve_threads(threads: int | None) -> int:
    """Explicit argument, else AUCPOWER_THREADS, else 1."""
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV_VAR, "1"))
    if threads < 1:
        raise DomainError(f"threads must be positive, got {threads}")
    return threads


def estimate_power(
    n: int,
    cfg: McConfig,
    draw_and_test: DrawAndTest,
    exhausted_error: type[AucPowerError],
    threads: int | None = None,
) -> PowerEstimate:
    """Run cfg.iterations independent simulations and count rejections.

    Untestable draws are redrawn from the same substream up to
    cfg.max_redraws_per_iteration times, keeping the nominal iteration
    count; the total number of redraws is reported. ``exhausted_error`` is
    raised if any single iteration runs out of redraws.
    """
    m = int(cfg.iterations)

    def one_iteration(index: int) -> tuple[bool, int]:
        rng = substream(cfg.seed, index)
        for redraws in range(cfg.max_redraws_per_iteration + 1):
            outcome = draw_and_test(rng)
            if outcome is not None:
                return outcome, redraws
        raise exhausted_error(
            f"iteration {index}: every draw was untestable after "
            f"{cfg.max_redraws_per_iteration} redraws"
        )

    workers = resolve_threads(threads)
    if workers == 1:
        outcomes: Iterable[tuple[bool, int]] = map(one_iteration, range(m))
        rejections, redraw_total = _tally(outcomes)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, m // (workers * 4))
            rejections, redraw_total = _tally(
                pool.map(one_iteration, range(m), chunksize=chunk)
            )

    power = rejections / m
    return PowerEstimate(
        n=int(n),
        power=power,
        mc_se=math.sqrt(power * (1.0 - power) / m),
        degenerate_draws=redraw_total,
    )


def _tally(outcomes: Iterable[tuple[bool, int]]) -> tuple[int, int]:
    rejections = 0
    redraws = 0
    for rejected, r in outcomes:
        rejections += rejected
        redraws += r
    return rejections, redraws


def power_curve(
    n_grid: Sequence[int],
    cfg: McConfig,
    evaluate_point: Callable[[int], PowerEstimate],
    prevalence_override: float | None = None,
) -> PowerCurve:
    """Evaluate power on a strictly increasing grid of sample sizes."""
    ns = [int(n) for n in n_grid]
    if not ns:
        raise DomainError("n_grid must not be empty")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise DomainError("n_grid must be strictly increasing")
    points = []
    for n in ns:
        try:
            points.append(evaluate_point(n))
        except AucPowerError as exc:
            raise type(exc)(f"at n={n}: {exc}") from exc
    return PowerCurve(points=tuple(points), config=cfg, prevalence_override=prevalence_override)


def min_n_search(
    target_power: float,
    n_min: int,
    n_max: int,
    evaluate_point: Callable[[int], PowerEstimate],
) -> MinSampleSizeResult:
    """Coarse geometric scan, then linear refinement inside the bracket.

    Returns the smallest evaluated n whose power estimate is at or above
    the target. Power estimates are MC noisy, so the result is exact only
    up to the refinement step and the mc_se of the points near the target;
    all evaluated points are returned for inspection.
    """
    target_power = float(target_power)
    if not 0.0 <= target_power < 1.0:
        raise DomainError(f"target_power must lie in [0, 1), got {target_power}")
    n_min, n_max = int(n_min), int(n_max)
    if n_min < 2:
        raise DomainError("n_min must be at least 2")
    if n_min >= n_max:
        raise DomainError(f"n_min ({n_min}) must be below n_max ({n_max})")

    grid = [n_min]
    while grid[-1] * 2 < n_max:
        grid.append(grid[-1] * 2)
    grid.append(n_max)

    evaluated: dict[int, PowerEstimate] = {}

    def power_at(n: int) -> PowerEstimate:
        if n not in evaluated:
            evaluated[n] = evaluate_point(n)
        return evaluated[n]

    hit = None
    lo = n_min
    for n in grid:
        est = power_at(n)
        if est.power >= target_power:
            hit = est
            break
        lo = n
    if hit is None:
        worst = evaluated[n_max]
        raise TargetUnreachableError(
            f"power at n_max={n_max} is {worst.power:.3f} "
            f"(mc_se {worst.mc_se:.3f}), below the {target_power:g} target"
        )

    best = hit
    if hit.n > lo:
        step = max(1, (hit.n - lo) // 8)
        for n in range(lo + step, hit.n, step):
            est = power_at(n)
            if est.power >= target_power:
                best = est
                break

    points = tuple(sorted(evaluated.values(), key=lambda p: p.n))
    return MinSampleSizeResult(
        n=best.n, target_power=target_power, achieved=best, evaluated=points
    )
