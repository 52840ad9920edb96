"""Midrank computation, the sorting kernel behind the O(N log N) paths."""

from __future__ import annotations

import numpy as np


def midranks(x: np.ndarray) -> np.ndarray:
    """1-based ranks with tied values sharing their average rank.

    Ties are grouped by exact bitwise equality of the float values; scores
    from deterministic models either collide exactly or not at all.
    """
    x = np.asarray(x)
    n = x.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.float64)
    order = np.argsort(x, kind="stable")
    z = x[order]
    # boundaries[k] .. boundaries[k+1]-1 is the k-th tie group (0-based)
    boundaries = np.flatnonzero(np.concatenate(([True], z[1:] != z[:-1], [True])))
    counts = np.diff(boundaries)
    group_mid = boundaries[:-1] + (counts + 1) / 2.0
    ranks = np.empty(n, dtype=np.float64)
    ranks[order] = np.repeat(group_mid, counts)
    return ranks
