"""SMOTE synthetic minority oversampling.

Each minority sample spawns ``amount_pct / 100`` synthetic points, every one
lying on the segment between the sample and one of its k nearest minority
neighbors (Euclidean, self excluded): ``x + u * (x_nn - x)`` with
``u ~ U[0, 1]``.  A requested k at or above the minority count is reduced to
count - 1 and noted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError, TrainingError
from ..rng import substream

__all__ = ["SmoteResult", "smote"]


@dataclass
class SmoteResult:
    features: np.ndarray
    labels: np.ndarray
    k_used: int
    parent_indices: np.ndarray  # minority-row position each synthetic point grew from
    note: str | None = None


def smote(
    features,
    labels,
    minority_class,
    k: int = 5,
    amount_pct: int = 100,
    seed: int = 0,
) -> SmoteResult:
    """Generate ``(amount_pct / 100) * n_minority`` synthetic minority points."""
    X = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels)
    if X.ndim != 2 or len(X) != len(y):
        raise InvalidArgumentError("features must be 2-D and aligned with labels")
    if amount_pct < 100 or amount_pct % 100 != 0:
        raise InvalidArgumentError(
            f"amount_pct must be a positive multiple of 100, got {amount_pct}"
        )
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")

    minority_mask = y == minority_class
    minority = X[minority_mask]
    n_min = len(minority)
    if n_min < 2:
        raise TrainingError(
            f"minority class {minority_class!r} has {n_min} samples; need at least 2"
        )
    note = None
    k_used = k
    if k >= n_min:
        k_used = n_min - 1
        note = f"k reduced from {k} to {k_used} (minority count {n_min})"

    # k nearest minority neighbors of each minority point, self excluded
    d2 = ((minority[:, None, :] - minority[None, :, :]) ** 2).sum(axis=2)
    np.fill_diagonal(d2, np.inf)
    neighbors = np.argsort(d2, axis=1, kind="stable")[:, :k_used]

    reps = amount_pct // 100
    g = substream(seed, 0)
    synthetic = np.empty((reps * n_min, X.shape[1]))
    parents = np.empty(reps * n_min, dtype=np.int64)
    pos = 0
    for i in range(n_min):
        for _ in range(reps):
            nn = minority[neighbors[i, int(g.integers(0, k_used))]]
            u = g.random()
            synthetic[pos] = minority[i] + u * (nn - minority[i])
            parents[pos] = i
            pos += 1
    labels_out = np.full(reps * n_min, minority_class, dtype=y.dtype)
    return SmoteResult(
        features=synthetic,
        labels=labels_out,
        k_used=k_used,
        parent_indices=parents,
        note=note,
    )
