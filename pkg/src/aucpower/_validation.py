"""Input coercion and validation shared by the estimators."""

from __future__ import annotations

import numpy as np

from .errors import (
    DomainError,
    EmptyClassError,
    LengthMismatchError,
    NonFiniteScoreError,
)


def as_labels(labels) -> np.ndarray:
    """Coerce to an int8 0/1 vector; reject anything not exactly 0 or 1."""
    y = np.asarray(labels)
    if y.ndim != 1:
        raise DomainError("labels must be one-dimensional")
    if y.dtype == bool:
        return y.astype(np.int8)
    values = np.asarray(y, dtype=float)
    if not np.all((values == 0.0) | (values == 1.0)):
        bad = values[(values != 0.0) & (values != 1.0)]
        raise DomainError(f"labels must be 0 or 1, found {bad[:5].tolist()}")
    return values.astype(np.int8)


def as_scores(scores, name: str = "scores") -> np.ndarray:
    """Coerce to a float64 vector of finite values."""
    s = np.asarray(scores, dtype=np.float64)
    if s.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(s)):
        raise NonFiniteScoreError(f"{name} contains NaN or infinite values")
    return s


def check_paired(labels, *score_vectors, names=None) -> tuple[np.ndarray, list[np.ndarray]]:
    """Validate labels plus one or more aligned score vectors.

    Returns the coerced label vector and score vectors, guaranteeing equal
    lengths, finite scores, and at least one case and one control.
    """
    y = as_labels(labels)
    out = []
    for k, sv in enumerate(score_vectors):
        name = names[k] if names else f"scores[{k}]"
        s = as_scores(sv, name=name)
        if s.shape[0] != y.shape[0]:
            raise LengthMismatchError(
                f"{name} has length {s.shape[0]}, labels have length {y.shape[0]}"
            )
        out.append(s)
    n_cases = int(y.sum())
    if n_cases == 0 or n_cases == y.shape[0]:
        raise EmptyClassError("need at least one case and one control")
    return y, out


def check_open_unit(value: float, name: str) -> float:
    """Require a real number strictly inside (0, 1)."""
    value = float(value)
    if not np.isfinite(value) or not 0.0 < value < 1.0:
        raise DomainError(f"{name} must lie strictly between 0 and 1, got {value}")
    return value
