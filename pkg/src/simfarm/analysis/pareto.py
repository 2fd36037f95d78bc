"""Pareto-front extraction by pairwise dominance counting.

A point is on the front iff no other point is at least as good in every
objective and strictly better in one (after normalizing maximize objectives
by negation).  Duplicate copies of a front point all stay on the front.  The
dominance scan is the n^2 hot loop and is numba-compiled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._accel import maybe_njit
from ..errors import InvalidArgumentError

__all__ = ["ParetoResult", "pareto_front"]

_DIRECTION_ALIASES = {
    "min": "minimize",
    "minimize": "minimize",
    "max": "maximize",
    "maximize": "maximize",
}


@dataclass
class ParetoResult:
    front: np.ndarray  # sorted row indices on the front
    directions: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "front": [int(i) for i in self.front],
            "directions": list(self.directions),
        }


@maybe_njit(cache=True)
def _non_dominated_mask(pts: np.ndarray) -> np.ndarray:
    # pts normalized so every objective is minimized
    n, m = pts.shape
    mask = np.ones(n, dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            dominates = True
            strict = False
            for c in range(m):
                if pts[j, c] > pts[i, c]:
                    dominates = False
                    break
                if pts[j, c] < pts[i, c]:
                    strict = True
            if dominates and strict:
                mask[i] = False
                break
    return mask


def pareto_front(points, directions) -> ParetoResult:
    """Indices of the non-dominated rows of ``points`` (n x m, m >= 2)."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise InvalidArgumentError("points must be a 2-D matrix")
    n, m = pts.shape
    if n < 1 or m < 2:
        raise InvalidArgumentError(f"need n >= 1 rows and m >= 2 objectives, got {n}x{m}")
    if not np.all(np.isfinite(pts)):
        raise InvalidArgumentError("points must be finite")
    dirs = tuple(directions)
    if len(dirs) != m:
        raise InvalidArgumentError(f"expected {m} directions, got {len(dirs)}")
    normalized = []
    for d in dirs:
        if d not in _DIRECTION_ALIASES:
            raise InvalidArgumentError(f"unknown direction {d!r}; use minimize/maximize")
        normalized.append(_DIRECTION_ALIASES[d])
    signs = np.array([1.0 if d == "minimize" else -1.0 for d in normalized])
    mask = _non_dominated_mask(np.ascontiguousarray(pts * signs))
    return ParetoResult(front=np.nonzero(mask)[0], directions=tuple(normalized))
