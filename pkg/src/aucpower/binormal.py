"""Power for comparing two models under a user-specified binormal model.

The generative model is specified by ten interpretable parameters, all
constrained to the open interval (0, 1): per-class mean predicted risks for
each model, per-class variance parameters, and per-class between-model
correlations, plus the outcome prevalence. Internally these are mapped to
logit-scale bivariate normals:

* mean parameters:      cases -> logit(mu),  controls -> logit(1 - mu)
* variance parameters:  v -> -ln(1 - v)
* correlation -> covariance: r -> r * sqrt(v_a * v_b)

Orientation convention: the literal control mean map logit(1 - mu) would
place control scores *above* case scores whenever the configured control
risk is below 0.5, flipping every AUROC. Control-class draws are therefore
negated at generation (their covariance is unchanged), which restores the
intuitive reading "cases centred at logit(mu_case), controls at
logit(mu_ctrl)". All reported quantities (sampled scores, anticipated
AUROCs, density contours) use this orientation. Always sanity-check the
anticipated AUROCs against what you intend before trusting a power figure;
every interface surfaces them for exactly that reason.

Between-model correlations are restricted to (0, 1); negative correlations
are not supported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import logit, ndtr

from ._validation import check_open_unit
from .delong import _fast_core
from .errors import DegenerateComparisonError, DegenerateSpecError, DomainError
from .mc import (
    McConfig,
    MinSampleSizeResult,
    PowerCurve,
    PowerEstimate,
    estimate_power,
    min_n_search,
    power_curve,
)

_FIELD_NAMES = (
    "mu_case_a",
    "mu_case_b",
    "mu_ctrl_a",
    "mu_ctrl_b",
    "phi",
    "v_case_a",
    "v_case_b",
    "v_ctrl_a",
    "v_ctrl_b",
    "r_case",
    "r_ctrl",
)


@dataclass(frozen=True)
class BinormalSpec:
    """User-facing generative model parameters, each strictly in (0, 1)."""

    mu_case_a: float
    mu_case_b: float
    mu_ctrl_a: float
    mu_ctrl_b: float
    phi: float
    v_case_a: float = 0.9
    v_case_b: float = 0.9
    v_ctrl_a: float = 0.9
    v_ctrl_b: float = 0.9
    r_case: float = 0.9
    r_ctrl: float = 0.9

    def __post_init__(self):
        for name in _FIELD_NAMES:
            check_open_unit(getattr(self, name), name)


@dataclass(frozen=True)
class ReparameterizedSpec:
    """Logit-scale means, log-scale variances, and covariances.

    Values are the literal reparameterization output; the control-negation
    orientation is applied downstream, at sampling and reporting time.
    """

    mean_case_a: float
    mean_case_b: float
    mean_ctrl_a: float
    mean_ctrl_b: float
    var_case_a: float
    var_case_b: float
    var_ctrl_a: float
    var_ctrl_b: float
    cov_case: float
    cov_ctrl: float
    phi: float


def reparameterize(spec: BinormalSpec) -> ReparameterizedSpec:
    """Map the (0, 1)-interval parameters onto the sampling scale."""
    var_case_a = -math.log1p(-spec.v_case_a)
    var_case_b = -math.log1p(-spec.v_case_b)
    var_ctrl_a = -math.log1p(-spec.v_ctrl_a)
    var_ctrl_b = -math.log1p(-spec.v_ctrl_b)
    return ReparameterizedSpec(
        mean_case_a=float(logit(spec.mu_case_a)),
        mean_case_b=float(logit(spec.mu_case_b)),
        mean_ctrl_a=float(logit(1.0 - spec.mu_ctrl_a)),
        mean_ctrl_b=float(logit(1.0 - spec.mu_ctrl_b)),
        var_case_a=var_case_a,
        var_case_b=var_case_b,
        var_ctrl_a=var_ctrl_a,
        var_ctrl_b=var_ctrl_b,
        cov_case=spec.r_case * math.sqrt(var_case_a * var_case_b),
        cov_ctrl=spec.r_ctrl * math.sqrt(var_ctrl_a * var_ctrl_b),
        phi=spec.phi,
    )


def _cholesky_2x2(va: float, vb: float, cov: float) -> np.ndarray:
    # Positive definiteness is guaranteed by r in (0, 1): vb - cov^2/va =
    # vb * (1 - r^2) > 0.
    l11 = math.sqrt(va)
    l21 = cov / l11
    l22 = math.sqrt(vb - l21 * l21)
    return np.array([[l11, 0.0], [l21, l22]])


def _generative_means(rspec: ReparameterizedSpec) -> tuple[np.ndarray, np.ndarray]:
    """Mean vectors of the distributions actually sampled (controls negated)."""
    case = np.array([rspec.mean_case_a, rspec.mean_case_b])
    ctrl = np.array([-rspec.mean_ctrl_a, -rspec.mean_ctrl_b])
    return case, ctrl


def sample_dataset(
    rspec: ReparameterizedSpec, n: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Draw (labels, scores_a, scores_b) of size n from the model.

    Consumes the stream in a fixed order (labels, case pairs, control
    pairs) so a given generator state always produces the same dataset.
    A case/control score pair is drawn for every row and the label selects
    which one becomes the prediction; control draws are negated per the
    module orientation convention.
    """
    n = int(n)
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    mean_case, mean_ctrl = _generative_means(rspec)
    chol_case = _cholesky_2x2(rspec.var_case_a, rspec.var_case_b, rspec.cov_case)
    chol_ctrl = _cholesky_2x2(rspec.var_ctrl_a, rspec.var_ctrl_b, rspec.cov_ctrl)

    y = rng.binomial(1, rspec.phi, size=n).astype(np.int8)
    case_pairs = rng.standard_normal((n, 2)) @ chol_case.T + mean_case
    # negating both coordinates keeps the covariance matrix intact
    ctrl_pairs = -(rng.standard_normal((n, 2)) @ chol_ctrl.T) + mean_ctrl

    picked = np.where(y[:, None] == 1, case_pairs, ctrl_pairs)
    return y, picked[:, 0].copy(), picked[:, 1].copy()


def anticipated_auroc(spec: BinormalSpec, model: str) -> float:
    """AUROC implied by the generative model for model "a" or "b".

    Closed form for normal within-class scores: Phi(delta / sqrt(v1 + v0))
    with delta the case-minus-control mean separation under the module
    orientation convention.
    """
    rspec = reparameterize(spec)
    model = model.lower()
    if model == "a":
        delta = rspec.mean_case_a + rspec.mean_ctrl_a
        spread = rspec.var_case_a + rspec.var_ctrl_a
    elif model == "b":
        delta = rspec.mean_case_b + rspec.mean_ctrl_b
        spread = rspec.var_case_b + rspec.var_ctrl_b
    else:
        raise DomainError(f'model must be "a" or "b", got {model!r}')
    return float(ndtr(delta / math.sqrt(spread)))


def power_binormal(
    spec: BinormalSpec, n_eval: int, cfg: McConfig, *, threads: int | None = None
) -> PowerEstimate:
    """Power at sample size n_eval from parametric simulation."""
    n_eval = int(n_eval)
    if n_eval < 2:
        raise DomainError(f"n_eval must be at least 2, got {n_eval}")
    rspec = reparameterize(spec)

    def draw_and_test(rng: np.random.Generator):
        y, sa, sb = sample_dataset(rspec, n_eval, rng)
        k = int(y.sum())
        if k == 0 or k == n_eval:
            return None
        try:
            comparison = _fast_core(y, sa, sb)
        except DegenerateComparisonError:
            return None
        return comparison.p_value < cfg.alpha

    return estimate_power(
        n_eval, cfg, draw_and_test, exhausted_error=DegenerateSpecError, threads=threads
    )


def power_curve_binormal(
    spec: BinormalSpec,
    n_grid: Sequence[int],
    cfg: McConfig,
    *,
    threads: int | None = None,
) -> PowerCurve:
    """One parametric power estimate per grid point."""

    def evaluate(n: int) -> PowerEstimate:
        return power_binormal(spec, n, cfg, threads=threads)

    return power_curve(n_grid, cfg, evaluate)


def min_n_for_power_binormal(
    spec: BinormalSpec,
    target_power: float,
    cfg: McConfig,
    n_min: int = 20,
    n_max: int = 5000,
    *,
    threads: int | None = None,
) -> MinSampleSizeResult:
    """Search for the smallest n reaching target power under the model."""

    def evaluate(n: int) -> PowerEstimate:
        return power_binormal(spec, n, cfg, threads=threads)

    return min_n_search(target_power, n_min, n_max, evaluate)


@dataclass(frozen=True)
class DensityGrid:
    """Bivariate score density over a regular grid, peak-normalized.

    ``z[i, j]`` is the normalized density at (x[j], y[i]) with model A on
    the x-axis and model B on the y-axis; multiply by ``peak_density`` to
    recover the true density values.
    """

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    peak_density: float
    mean_x: float
    mean_y: float


def density_contours(
    spec: BinormalSpec, class_label: str, grid_resolution: int = 64
) -> DensityGrid:
    """Score-plane density grid for one outcome class, for contour plots.

    The grid spans mean +/- 4 standard deviations per axis and reflects the
    distribution actually sampled (controls carry negated means).
    """
    grid_resolution = int(grid_resolution)
    if grid_resolution < 16:
        raise DomainError(f"grid_resolution must be at least 16, got {grid_resolution}")
    rspec = reparameterize(spec)
    mean_case, mean_ctrl = _generative_means(rspec)
    label = class_label.lower()
    if label == "case":
        mean = mean_case
        va, vb, cov = rspec.var_case_a, rspec.var_case_b, rspec.cov_case
    elif label == "control":
        mean = mean_ctrl
        va, vb, cov = rspec.var_ctrl_a, rspec.var_ctrl_b, rspec.cov_ctrl
    else:
        raise DomainError(f'class_label must be "case" or "control", got {class_label!r}')

    sd_a = math.sqrt(va)
    sd_b = math.sqrt(vb)
    x = np.linspace(mean[0] - 4.0 * sd_a, mean[0] + 4.0 * sd_a, grid_resolution)
    y = np.linspace(mean[1] - 4.0 * sd_b, mean[1] + 4.0 * sd_b, grid_resolution)
    dx = x[None, :] - mean[0]
    dy = y[:, None] - mean[1]
    det = va * vb - cov * cov
    quad = (vb * dx * dx - 2.0 * cov * dx * dy + va * dy * dy) / det
    peak = 1.0 / (2.0 * math.pi * math.sqrt(det))
    z = np.exp(-0.5 * quad)
    return DensityGrid(
        x=x, y=y, z=z, peak_density=peak, mean_x=float(mean[0]), mean_y=float(mean[1])
    )
