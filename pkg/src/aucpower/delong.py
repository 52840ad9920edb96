"""Paired comparison of two models' AUROCs (DeLong Z test).

Both models score the same individuals, so the two AUROC estimates are
correlated; the test variance must include their covariance, which is
estimated from per-observation placement values:

* a case's placement is the fraction of controls it outranks (ties 0.5);
* a control's placement is the fraction of cases ranked above it.

The mean placement of either class is exactly the AUROC. Sample
(co)variances of the paired placement vectors, scaled by 1/n and 1/m, give
the variance of each AUROC and the covariance between models.

Two interchangeable implementations are exposed: :func:`delong_test`
computes placements by explicit pairwise comparison (O(n*m), kept as the
reference), and :func:`delong_test_fast` computes them from midranks in
O(N log N). They agree to 1e-10 on every field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from ._ranks import midranks
from ._validation import check_paired
from .errors import DegenerateComparisonError

# var(theta_A - theta_B) at or below this fraction of var_A + var_B is
# treated as zero; rank-identical score vectors land here exactly.
_DEGENERATE_RTOL = 1e-12


@dataclass(frozen=True)
class DelongComparison:
    """Result of the paired two-sided Z test for equal AUROCs."""

    auroc_a: float
    auroc_b: float
    var_a: float
    var_b: float
    cov_ab: float
    z: float
    p_value: float


def delong_components(labels, scores):
    """Per-observation placement values (cases, controls) for one model.

    Definitional O(n*m) construction; the mean of either vector equals
    :func:`aucpower.roc.estimate_auroc` on the same data.
    """
    y, (s,) = check_paired(labels, scores)
    case = y == 1
    return _placements_pairwise(s[case], s[~case])


def _placements_pairwise(cases: np.ndarray, ctrls: np.ndarray):
    cmp_ = (cases[:, None] > ctrls[None, :]).astype(np.float64)
    cmp_ += 0.5 * (cases[:, None] == ctrls[None, :])
    return cmp_.mean(axis=1), cmp_.mean(axis=0)


def _placements_midrank(cases: np.ndarray, ctrls: np.ndarray):
    n = cases.shape[0]
    m = ctrls.shape[0]
    tx = midranks(cases)
    ty = midranks(ctrls)
    tz = midranks(np.concatenate((cases, ctrls)))
    v10 = (tz[:n] - tx) / m
    v01 = 1.0 - (tz[n:] - ty) / n
    return v10, v01


def delong_test(labels, scores_a, scores_b) -> DelongComparison:
    """Reference implementation: placements via explicit pair comparison."""
    y, (sa, sb) = check_paired(labels, scores_a, scores_b, names=("scores_a", "scores_b"))
    case = y == 1
    v10a, v01a = _placements_pairwise(sa[case], sa[~case])
    v10b, v01b = _placements_pairwise(sb[case], sb[~case])

    n = v10a.shape[0]
    m = v01a.shape[0]
    # Sample covariance matrices of paired placements; a singleton class has
    # no estimable variance and contributes zero.
    if n >= 2:
        s10 = np.cov(np.vstack((v10a, v10b)), ddof=1)
    else:
        s10 = np.zeros((2, 2))
    if m >= 2:
        s01 = np.cov(np.vstack((v01a, v01b)), ddof=1)
    else:
        s01 = np.zeros((2, 2))

    return _z_test(
        auroc_a=float(v10a.mean()),
        auroc_b=float(v10b.mean()),
        var_a=float(s10[0, 0] / n + s01[0, 0] / m),
        var_b=float(s10[1, 1] / n + s01[1, 1] / m),
        cov_ab=float(s10[0, 1] / n + s01[0, 1] / m),
    )


def delong_test_fast(labels, scores_a, scores_b) -> DelongComparison:
    """Fast path: placements via midranks, O(N log N) end to end."""
    y, (sa, sb) = check_paired(labels, scores_a, scores_b, names=("scores_a", "scores_b"))
    return _fast_core(y, sa, sb)


def _fast_core(y: np.ndarray, sa: np.ndarray, sb: np.ndarray) -> DelongComparison:
    """delong_test_fast on pre-validated arrays (hot path for MC loops)."""
    case = y == 1
    ctrl = ~case
    v10a, v01a = _placements_midrank(sa[case], sa[ctrl])
    v10b, v01b = _placements_midrank(sb[case], sb[ctrl])

    n = v10a.shape[0]
    m = v01a.shape[0]
    va10, vb10, cab10 = _pair_cov(v10a, v10b)
    va01, vb01, cab01 = _pair_cov(v01a, v01b)

    return _z_test(
        auroc_a=float(v10a.mean()),
        auroc_b=float(v10b.mean()),
        var_a=va10 / n + va01 / m,
        var_b=vb10 / n + vb01 / m,
        cov_ab=cab10 / n + cab01 / m,
    )


def _pair_cov(u: np.ndarray, v: np.ndarray) -> tuple[float, float, float]:
    """(var(u), var(v), cov(u, v)) with ddof=1; zeros for a singleton."""
    k = u.shape[0]
    if k < 2:
        return 0.0, 0.0, 0.0
    du = u - u.mean()
    dv = v - v.mean()
    return (
        float(du @ du) / (k - 1),
        float(dv @ dv) / (k - 1),
        float(du @ dv) / (k - 1),
    )


def _z_test(auroc_a, auroc_b, var_a, var_b, cov_ab) -> DelongComparison:
    var_diff = var_a + var_b - 2.0 * cov_ab
    if var_diff <= _DEGENERATE_RTOL * (var_a + var_b):
        raise DegenerateComparisonError(
            "variance of the AUROC difference is zero; the two score vectors "
            "are rank-identical (or nearly so) and the Z test is undefined"
        )
    z = (auroc_a - auroc_b) / math.sqrt(var_diff)
    p = 2.0 * float(ndtr(-abs(z)))
    return DelongComparison(
        auroc_a=auroc_a,
        auroc_b=auroc_b,
        var_a=var_a,
        var_b=var_b,
        cov_ab=cov_ab,
        z=z,
        p_value=p,
    )
