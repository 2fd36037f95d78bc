import numpy as np
import pytest

from simfarm.errors import InvalidArgumentError
from simfarm.models import evaluate_metrics


class TestRegression:
    def test_perfect_predictions(self):
        y = np.array([1.0, 2.0, 3.0])
        m = evaluate_metrics(y, y, "regression")
        assert m["mse"] == 0.0 and m["mae"] == 0.0 and m["r2"] == 1.0

    def test_constant_mean_predictor_r2_zero(self):
        truth = np.array([1.0, 2.0, 3.0, 4.0])
        pred = np.full(4, truth.mean())
        assert evaluate_metrics(pred, truth, "regression")["r2"] == pytest.approx(0.0)

    def test_constant_truth_r2_undefined(self):
        truth = np.full(5, 2.0)
        m = evaluate_metrics(np.arange(5.0), truth, "regression")
        assert m["r2"] is None

    def test_mse_mae_values(self):
        truth = np.array([0.0, 0.0])
        pred = np.array([1.0, -3.0])
        m = evaluate_metrics(pred, truth, "regression")
        assert m["mse"] == pytest.approx(5.0)
        assert m["mae"] == pytest.approx(2.0)


class TestClassification:
    def test_perfect_predictions(self):
        y = np.array([0, 1, 2, 1])
        m = evaluate_metrics(y, y, "classification")
        assert m["accuracy"] == 1.0 and m["macro_f1"] == 1.0

    def test_tp1_fp1_fn1(self):
        # class 1: one true positive, one false positive, one false negative
        truth = np.array([1, 0, 1, 0])
        pred = np.array([1, 1, 0, 0])
        m = evaluate_metrics(pred, truth, "classification")
        stats = m["per_class"]["1"]
        assert stats["precision"] == pytest.approx(0.5)
        assert stats["recall"] == pytest.approx(0.5)
        assert stats["f1"] == pytest.approx(0.5)

    def test_absent_class_scores_zero(self):
        truth = np.array([0, 0, 1, 1])
        pred = np.array([0, 0, 0, 0])
        m = evaluate_metrics(pred, truth, "classification")
        assert m["per_class"]["1"]["precision"] == 0.0
        assert m["per_class"]["1"]["recall"] == 0.0
        assert m["per_class"]["1"]["f1"] == 0.0


class TestContracts:
    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            evaluate_metrics(np.arange(3), np.arange(4), "regression")

    def test_empty_rejected(self):
        with pytest.raises(InvalidArgumentError):
            evaluate_metrics([], [], "regression")

    def test_unknown_task(self):
        with pytest.raises(InvalidArgumentError):
            evaluate_metrics([1], [1], "ranking")
