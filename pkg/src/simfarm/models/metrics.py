"""Prediction quality metrics for regression and classification."""

from __future__ import annotations

import numpy as np

from ..errors import InvalidArgumentError

__all__ = ["evaluate_metrics"]


def _regression_metrics(pred: np.ndarray, truth: np.ndarray) -> dict:
    pred = pred.astype(np.float64)
    truth = truth.astype(np.float64)
    err = pred - truth
    ss_res = float(err @ err)
    ss_tot = float(((truth - truth.mean()) ** 2).sum())
    return {
        "mse": float(np.mean(err**2)),
        "mae": float(np.mean(np.abs(err))),
        # R^2 is undefined on constant truth
        "r2": None if ss_tot == 0.0 else 1.0 - ss_res / ss_tot,
    }


def _classification_metrics(pred: np.ndarray, truth: np.ndarray) -> dict:
    classes = sorted(set(truth.tolist()) | set(pred.tolist()))
    per_class = {}
    precisions, recalls, f1s = [], [], []
    for c in classes:
        tp = int(np.sum((pred == c) & (truth == c)))
        fp = int(np.sum((pred == c) & (truth != c)))
        fn = int(np.sum((pred != c) & (truth == c)))
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[str(c)] = {
            "precision": precision,
            "recall": recall,
            "f1": f1,
            "support": int(np.sum(truth == c)),
        }
        precisions.append(precision)
        recalls.append(recall)
        f1s.append(f1)
    return {
        "accuracy": float(np.mean(pred == truth)),
        "per_class": per_class,
        "macro_precision": float(np.mean(precisions)),
        "macro_recall": float(np.mean(recalls)),
        "macro_f1": float(np.mean(f1s)),
    }


def evaluate_metrics(predictions, truth, task: str) -> dict:
    """Regression: mse/mae/r2.  Classification: accuracy plus per-class and
    macro precision/recall/F1."""
    pred = np.asarray(predictions)
    truth = np.asarray(truth)
    if len(pred) != len(truth):
        raise InvalidArgumentError(
            f"predictions ({len(pred)}) and truth ({len(truth)}) differ in length"
        )
    if len(pred) == 0:
        raise InvalidArgumentError("predictions must be non-empty")
    if task == "regression":
        return _regression_metrics(pred, truth)
    if task == "classification":
        return _classification_metrics(pred, truth)
    raise InvalidArgumentError(f"unknown task {task!r}")
