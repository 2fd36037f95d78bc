"""Midrank utilities shared by the rank-based tests and Spearman correlation."""

from __future__ import annotations

import numpy as np

__all__ = ["midranks", "tie_term"]


def midranks(x) -> np.ndarray:
    """Ranks 1..n with ties replaced by their average rank."""
    x = np.asarray(x, dtype=np.float64)
    n = len(x)
    order = np.argsort(x, kind="stable")
    ranks = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and x[order[j + 1]] == x[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def tie_term(x) -> float:
    """Sum of t^3 - t over tie groups of ``x`` (0 when all values distinct)."""
    x = np.sort(np.asarray(x, dtype=np.float64))
    total = 0.0
    i = 0
    n = len(x)
    while i < n:
        j = i
        while j + 1 < n and x[j + 1] == x[i]:
            j += 1
        t = j - i + 1
        if t > 1:
            total += t**3 - t
        i = j + 1
    return total
