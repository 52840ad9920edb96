"""Single-model AUROC estimation with asymptotic confidence intervals.

The point estimate is the Mann-Whitney U-statistic: the fraction of
case/control pairs where the case received the higher score, ties credited
0.5. It is computed from pooled midranks in O(N log N) but is exactly
equivalent to the literal double sum over all pairs.

The standard error comes from Newcombe's closed-form variance
approximation, which depends only on the AUROC value, the prevalence and
the total sample size; this is what makes the sample-size scan in
:mod:`aucpower.single` possible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._ranks import midranks
from ._validation import check_open_unit, check_paired
from .errors import DegenerateAurocError, DomainError

# 97.5% standard-normal quantile; the 95% CI definition hardcodes it and a
# confidence-level parameter is deliberately not offered.
Z_95 = 1.96


@dataclass(frozen=True)
class AurocEstimate:
    """AUROC point estimate with Newcombe standard error and 95% CI.

    ``ci_low``/``ci_high`` are clamped to [0, 1]; the raw unclamped bounds
    are kept alongside for transparency.
    """

    theta_hat: float
    se: float
    ci_low: float
    ci_high: float
    ci_low_raw: float
    ci_high_raw: float
    n_cases: int
    n_controls: int

    @property
    def n_total(self) -> int:
        return self.n_cases + self.n_controls

    @property
    def ci_width(self) -> float:
        return self.ci_high - self.ci_low


def estimate_auroc(labels, scores) -> float:
    """Probability that a random case outscores a random control.

    Equals ``(1/nm) * sum_i sum_j [1 if case_i > control_j, 0.5 if tied]``
    over all case/control pairs, evaluated via pooled midranks so the cost
    is O(N log N) rather than O(n*m).
    """
    y, (s,) = check_paired(labels, scores)
    return _auroc_from_ranks(y, s)


def _auroc_from_ranks(y: np.ndarray, s: np.ndarray) -> float:
    n = int(y.sum())
    m = y.shape[0] - n
    ranks = midranks(s)
    rank_sum_cases = float(ranks[y == 1].sum())
    return (rank_sum_cases - n * (n + 1) / 2.0) / (n * m)


def newcombe_variance(theta: float, phi: float, n_total: int) -> float:
    """Closed-form approximation to VAR(theta_hat).

    Evaluated literally as published: the (N/2 - 1) terms come from a
    balanced-design derivation, yet the denominator carries phi(1-phi)N^2
    and the formula is applied at arbitrary prevalence.
    """
    theta = check_open_unit(theta, "theta")
    phi = check_open_unit(phi, "phi")
    n_total = int(n_total)
    if n_total < 2:
        raise DomainError(f"n_total must be at least 2, got {n_total}")
    half = n_total / 2.0 - 1.0
    bracket = 1.0 + half * ((1.0 - theta) / (2.0 - theta)) + half * theta / (1.0 + theta)
    return theta * (1.0 - theta) * bracket / (phi * (1.0 - phi) * n_total * n_total)


def auroc_with_ci(labels, scores) -> AurocEstimate:
    """AUROC estimate plus Newcombe-variance 95% confidence interval.

    Raises :class:`DegenerateAurocError` when the estimate sits on the
    {0, 1} boundary: the variance formula degenerates there, and reporting
    a silent zero-width interval would be misleading.
    """
    y, (s,) = check_paired(labels, scores)
    theta = _auroc_from_ranks(y, s)
    n_cases = int(y.sum())
    n_controls = y.shape[0] - n_cases
    n_total = y.shape[0]
    if theta <= 0.0 or theta >= 1.0:
        raise DegenerateAurocError(
            f"AUROC estimate is {theta:g}; the asymptotic variance is undefined "
            "on the boundary and no confidence interval can be reported"
        )
    se = float(np.sqrt(newcombe_variance(theta, n_cases / n_total, n_total)))
    low_raw = theta - Z_95 * se
    high_raw = theta + Z_95 * se
    return AurocEstimate(
        theta_hat=theta,
        se=se,
        ci_low=max(0.0, low_raw),
        ci_high=min(1.0, high_raw),
        ci_low_raw=low_raw,
        ci_high_raw=high_raw,
        n_cases=n_cases,
        n_controls=n_controls,
    )
