"""Surrogate modeling: preprocessing, a small from-scratch model family,
cross-validation, random-search tuning, SMOTE resampling, and metrics."""

from .forest import RandomForest
from .linear import RidgeRegressor
from .metrics import evaluate_metrics
from .mlp import MlpModel
from .neighbors import KnnModel
from .preprocess import (
    ColumnDirective,
    FittedPreprocessor,
    PreprocessorSpec,
    preprocess,
)
from .selection import CvReport, kfold_split, random_search_cv, random_search_cv_table
from .serialize import load_model, save_model
from .smote import SmoteResult, smote
from .spec import Choice, FloatRange, IntRange, ModelSpec, default_spec
from .train import TrainedModel, train
from .tree import CartTree

__all__ = [
    "RandomForest",
    "RidgeRegressor",
    "evaluate_metrics",
    "MlpModel",
    "KnnModel",
    "ColumnDirective",
    "FittedPreprocessor",
    "PreprocessorSpec",
    "preprocess",
    "CvReport",
    "kfold_split",
    "random_search_cv",
    "random_search_cv_table",
    "load_model",
    "save_model",
    "SmoteResult",
    "smote",
    "Choice",
    "FloatRange",
    "IntRange",
    "ModelSpec",
    "default_spec",
    "TrainedModel",
    "train",
    "CartTree",
]
