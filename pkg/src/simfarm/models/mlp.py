"""Minimal fully-connected network trained by plain mini-batch SGD.

One or two ReLU hidden layers; identity output with mean-squared-error loss
for regression, softmax with cross-entropy for classification.  No momentum,
adaptive rates, or early stopping: the gradient computation stays small
enough to audit against finite differences (see the test suite).  Weight
initialization and batch shuffling come from seeded substreams, so training
is bit-reproducible.
"""

from __future__ import annotations

import numpy as np

from ..errors import TrainingError
from ..rng import substream

__all__ = ["MlpModel"]


def _relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def _softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


class MlpModel:
    family = "mlp"

    def __init__(
        self,
        hidden=(16,),
        learning_rate: float = 0.01,
        epochs: int = 100,
        batch_size: int = 32,
        task: str = "regression",
    ):
        hidden = tuple(int(h) for h in (hidden if isinstance(hidden, (tuple, list)) else (hidden,)))
        if not (1 <= len(hidden) <= 2) or any(h < 1 for h in hidden):
            raise TrainingError(f"hidden must be 1 or 2 positive layer sizes, got {hidden}")
        if learning_rate <= 0:
            raise TrainingError(f"learning_rate must be > 0, got {learning_rate}")
        if epochs < 1 or batch_size < 1:
            raise TrainingError("epochs and batch_size must be >= 1")
        self.hidden = hidden
        self.learning_rate = float(learning_rate)
        self.epochs = int(epochs)
        self.batch_size = int(batch_size)
        self.task = task
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        self.classes_: np.ndarray | None = None

    # -- core ----------------------------------------------------------------

    def _init_params(self, n_in: int, n_out: int, seed: int) -> None:
        sizes = [n_in, *self.hidden, n_out]
        self.weights = []
        self.biases = []
        for layer, (a, b) in enumerate(zip(sizes, sizes[1:])):
            g = substream(seed, 0, layer)
            scale = np.sqrt(2.0 / a) if layer < len(sizes) - 2 else np.sqrt(1.0 / a)
            self.weights.append(g.normal(0.0, scale, size=(a, b)))
            self.biases.append(np.zeros(b))

    def _forward(self, X: np.ndarray) -> list[np.ndarray]:
        acts = [X]
        for layer in range(len(self.weights) - 1):
            acts.append(_relu(acts[-1] @ self.weights[layer] + self.biases[layer]))
        acts.append(acts[-1] @ self.weights[-1] + self.biases[-1])
        return acts

    def _encode_targets(self, y: np.ndarray) -> np.ndarray:
        if self.task == "regression":
            return np.asarray(y, dtype=np.float64).reshape(-1, 1)
        onehot = np.zeros((len(y), len(self.classes_)))
        onehot[np.arange(len(y)), np.searchsorted(self.classes_, y)] = 1.0
        return onehot

    def loss_and_grads(self, X: np.ndarray, target: np.ndarray):
        """Mean loss over the batch plus gradients for every weight and bias.

        ``target`` is the encoded target (column vector / one-hot rows).
        """
        acts = self._forward(X)
        out = acts[-1]
        n = len(X)
        if self.task == "regression":
            diff = out - target
            loss = float(np.mean(diff**2))
            delta = 2.0 * diff / (n * out.shape[1])
        else:
            probs = _softmax(out)
            eps = 1e-12
            loss = float(-np.mean(np.sum(target * np.log(probs + eps), axis=1)))
            delta = (probs - target) / n
        grads_w = [np.empty(0)] * len(self.weights)
        grads_b = [np.empty(0)] * len(self.biases)
        for layer in range(len(self.weights) - 1, -1, -1):
            grads_w[layer] = acts[layer].T @ delta
            grads_b[layer] = delta.sum(axis=0)
            if layer > 0:
                delta = (delta @ self.weights[layer].T) * (acts[layer] > 0.0)
        return loss, grads_w, grads_b

    def fit(self, X: np.ndarray, y: np.ndarray, seed: int = 0) -> "MlpModel":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        if len(X) < 2:
            raise TrainingError("need at least 2 training rows")
        if self.task == "classification":
            self.classes_ = np.unique(y)
            if len(self.classes_) < 2:
                raise TrainingError("classification needs at least 2 classes")
            n_out = len(self.classes_)
        else:
            n_out = 1
        self._init_params(X.shape[1], n_out, seed)
        target = self._encode_targets(y)
        n = len(X)
        for epoch in range(self.epochs):
            order = substream(seed, 1, epoch).permutation(n)
            for start in range(0, n, self.batch_size):
                batch = order[start : start + self.batch_size]
                _, grads_w, grads_b = self.loss_and_grads(X[batch], target[batch])
                for layer in range(len(self.weights)):
                    self.weights[layer] -= self.learning_rate * grads_w[layer]
                    self.biases[layer] -= self.learning_rate * grads_b[layer]
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        if not self.weights:
            raise TrainingError("model is not fitted")
        out = self._forward(np.asarray(X, dtype=np.float64))[-1]
        if self.task == "regression":
            return out.ravel()
        return self.classes_[np.argmax(out, axis=1)]

    def to_state(self) -> dict:
        return {
            "hidden": list(self.hidden),
            "learning_rate": self.learning_rate,
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "task": self.task,
            "weights": [w.tolist() for w in self.weights],
            "biases": [b.tolist() for b in self.biases],
            "classes": None if self.classes_ is None else self.classes_.tolist(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "MlpModel":
        model = cls(
            hidden=tuple(state["hidden"]),
            learning_rate=state["learning_rate"],
            epochs=state["epochs"],
            batch_size=state["batch_size"],
            task=state["task"],
        )
        model.weights = [np.asarray(w, dtype=np.float64) for w in state["weights"]]
        model.biases = [np.asarray(b, dtype=np.float64) for b in state["biases"]]
        if state["classes"] is not None:
            model.classes_ = np.asarray(state["classes"], dtype=np.int64)
        return model
