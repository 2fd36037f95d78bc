"""Training entry point and the serializable TrainedModel wrapper."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ModelSpecError, TrainingError
from ..tables import DataColumn
from .forest import RandomForest
from .linear import RidgeRegressor
from .mlp import MlpModel
from .neighbors import KnnModel
from .preprocess import FittedPreprocessor
from .spec import ModelSpec
from .tree import CartTree

__all__ = ["TrainedModel", "train", "MODEL_CLASSES"]

MODEL_CLASSES = {
    "linear_ridge": RidgeRegressor,
    "knn": KnnModel,
    "cart_tree": CartTree,
    "random_forest": RandomForest,
    "mlp": MlpModel,
}


@dataclass
class TrainedModel:
    family: str
    task: str
    params: dict
    model: object
    seed: int
    preprocessor: FittedPreprocessor | None = None
    class_labels: list[str] | None = None  # original labels for classification

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.model.predict(np.asarray(X, dtype=np.float64))

    def predict_table(self, table: list[DataColumn]) -> np.ndarray:
        """Predict from raw columns via the stored preprocessor."""
        if self.preprocessor is None:
            raise TrainingError("model was trained without a preprocessor")
        return self.predict(self.preprocessor.transform(table).matrix)


def _build(family: str, task: str, params: dict):
    if family == "linear_ridge":
        return RidgeRegressor(lam=params.get("lam", 0.0))
    if family == "knn":
        return KnnModel(k=params.get("k", 5), task=task)
    if family == "cart_tree":
        return CartTree(
            max_depth=params.get("max_depth", 8),
            min_leaf=params.get("min_leaf", 1),
            task=task,
        )
    if family == "random_forest":
        return RandomForest(
            n_trees=params.get("n_trees", 30),
            max_depth=params.get("max_depth", 8),
            min_leaf=params.get("min_leaf", 1),
            feature_fraction=params.get("feature_fraction", 1.0),
            bootstrap=params.get("bootstrap", True),
            task=task,
        )
    if family == "mlp":
        return MlpModel(
            hidden=params.get("hidden", (16,)),
            learning_rate=params.get("learning_rate", 0.01),
            epochs=params.get("epochs", 100),
            batch_size=params.get("batch_size", 32),
            task=task,
        )
    raise ModelSpecError(f"unknown family {family!r}")


def train(
    spec: ModelSpec,
    X: np.ndarray,
    y: np.ndarray,
    seed: int = 0,
    preprocessor: FittedPreprocessor | None = None,
    class_labels: list[str] | None = None,
) -> TrainedModel:
    """Fit ``spec`` (all hyperparameters fixed) on ``(X, y)``."""
    spec.validate()
    params = spec.fixed_params()
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or len(X) != len(y):
        raise TrainingError("X must be a 2-D matrix aligned with y")
    if len(X) < 2:
        raise TrainingError("need at least 2 training rows")
    y = np.asarray(y)
    if spec.task == "classification":
        y = y.astype(np.int64)
        if len(np.unique(y)) < 2:
            raise TrainingError("classification needs at least 2 classes in y")
    else:
        y = y.astype(np.float64)

    model = _build(spec.family, spec.task, params)
    if spec.family in ("random_forest", "mlp"):
        model.fit(X, y, seed=seed)
    else:
        model.fit(X, y)
    return TrainedModel(
        family=spec.family,
        task=spec.task,
        params=params,
        model=model,
        seed=int(seed),
        preprocessor=preprocessor,
        class_labels=class_labels,
    )
