"""TrainedModel JSON serialization with an explicit format version."""

from __future__ import annotations

import json

from ..errors import ModelFormatError
from .preprocess import FittedPreprocessor
from .train import MODEL_CLASSES, TrainedModel

__all__ = ["MODEL_FORMAT_VERSION", "model_to_dict", "model_from_dict", "save_model", "load_model"]

MODEL_FORMAT_VERSION = 1


def model_to_dict(tm: TrainedModel) -> dict:
    params = {}
    for k, v in tm.params.items():
        params[k] = list(v) if isinstance(v, tuple) else v
    return {
        "schema_version": MODEL_FORMAT_VERSION,
        "kind": "trained-model",
        "family": tm.family,
        "task": tm.task,
        "seed": tm.seed,
        "params": params,
        "class_labels": tm.class_labels,
        "state": tm.model.to_state(),
        "preprocessor": None if tm.preprocessor is None else tm.preprocessor.to_dict(),
    }


def model_from_dict(doc: dict) -> TrainedModel:
    if doc.get("kind") != "trained-model":
        raise ModelFormatError("document is not a trained-model file")
    version = doc.get("schema_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(
            f"model format version {version!r} not supported (expected {MODEL_FORMAT_VERSION})"
        )
    family = doc.get("family")
    if family not in MODEL_CLASSES:
        raise ModelFormatError(f"unknown model family {family!r}")
    model = MODEL_CLASSES[family].from_state(doc["state"])
    preprocessor = (
        None if doc.get("preprocessor") is None
        else FittedPreprocessor.from_dict(doc["preprocessor"])
    )
    return TrainedModel(
        family=family,
        task=doc["task"],
        params=doc.get("params", {}),
        model=model,
        seed=doc.get("seed", 0),
        preprocessor=preprocessor,
        class_labels=doc.get("class_labels"),
    )


def save_model(tm: TrainedModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(tm), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_model(path) -> TrainedModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"invalid model file: {exc}") from exc
    return model_from_dict(doc)
