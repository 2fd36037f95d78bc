import numpy as np
import pytest

from simfarm.errors import DegenerateSampleError, InvalidArgumentError, ModelSpecError
from simfarm.models.preprocess import (
    ColumnDirective,
    PreprocessorSpec,
    preprocess,
)
from simfarm.tables import DataColumn


def numeric(name, values):
    return DataColumn.numeric(name, values)


def categorical(name, values):
    return DataColumn.categorical(name, np.array(values, dtype=object))


class TestScaling:
    def test_minmax_maps_fit_range_to_unit(self):
        spec = PreprocessorSpec({"x": ColumnDirective(scaling="minmax")})
        _, result = preprocess(spec, [numeric("x", [0.0, 5.0, 10.0])])
        assert np.allclose(result.matrix.ravel(), [0.0, 0.5, 1.0])

    def test_zscore_normalizes_fit_data(self):
        spec = PreprocessorSpec({"x": ColumnDirective(scaling="zscore")})
        _, result = preprocess(spec, [numeric("x", [1.0, 2.0, 3.0, 4.0])])
        col = result.matrix.ravel()
        assert col.mean() == pytest.approx(0.0, abs=1e-12)
        assert col.std(ddof=0) == pytest.approx(1.0, abs=1e-12)

    def test_zscore_zero_sd_names_column(self):
        spec = PreprocessorSpec({"flat": ColumnDirective(scaling="zscore")})
        with pytest.raises(DegenerateSampleError, match="flat"):
            preprocess(spec, [numeric("flat", [2.0, 2.0, 2.0])])

    def test_apply_uses_fit_statistics_only(self):
        spec = PreprocessorSpec({"x": ColumnDirective(scaling="minmax")})
        fp, fit_result = preprocess(spec, [numeric("x", [0.0, 10.0])])
        applied = fp.transform([numeric("x", [20.0])])
        assert applied.matrix.ravel()[0] == pytest.approx(2.0)  # extrapolates, no refit
        refit = fp.transform([numeric("x", [0.0, 10.0])])
        assert np.array_equal(refit.matrix, fit_result.matrix)  # no leakage


class TestEncoding:
    def test_onehot_expands_levels(self):
        spec = PreprocessorSpec({"c": ColumnDirective(encoding="onehot")})
        fp, result = preprocess(spec, [categorical("c", ["A", "B", "C", "B"])])
        assert result.feature_names == ["c=A", "c=B", "c=C"]
        assert np.array_equal(result.matrix[1], [0.0, 1.0, 0.0])

    def test_unseen_level_all_zero_and_flagged(self):
        spec = PreprocessorSpec({"c": ColumnDirective(encoding="onehot")})
        fp, _ = preprocess(spec, [categorical("c", ["A", "B"])])
        result = fp.transform([categorical("c", ["A", "D"])])
        assert np.array_equal(result.matrix[1], [0.0, 0.0])
        assert result.unseen == [(1, "c", "D")]

    def test_onehot_on_numeric_is_spec_error(self):
        spec = PreprocessorSpec({"x": ColumnDirective(encoding="onehot")})
        with pytest.raises(ModelSpecError):
            preprocess(spec, [numeric("x", [1.0, 2.0])])

    def test_categorical_without_onehot_rejected(self):
        spec = PreprocessorSpec({"c": ColumnDirective()})
        with pytest.raises(ModelSpecError):
            preprocess(spec, [categorical("c", ["A", "B"])])


class TestImputation:
    def test_mean_impute(self):
        spec = PreprocessorSpec({"x": ColumnDirective(imputation="mean")})
        _, result = preprocess(spec, [numeric("x", [1.0, np.nan, 3.0])])
        assert np.allclose(result.matrix.ravel(), [1.0, 2.0, 3.0])

    def test_mode_impute_categorical(self):
        spec = PreprocessorSpec(
            {"c": ColumnDirective(encoding="onehot", imputation="mode")}
        )
        fp, result = preprocess(spec, [categorical("c", ["A", "A", "B", None])])
        assert np.array_equal(result.matrix[3], [1.0, 0.0])  # mode A

    def test_mean_impute_on_categorical_rejected(self):
        spec = PreprocessorSpec(
            {"c": ColumnDirective(encoding="onehot", imputation="mean")}
        )
        with pytest.raises(ModelSpecError):
            preprocess(spec, [categorical("c", ["A", "B"])])

    def test_missing_without_imputation_rejected(self):
        spec = PreprocessorSpec({"x": ColumnDirective()})
        with pytest.raises(InvalidArgumentError, match="x"):
            preprocess(spec, [numeric("x", [1.0, np.nan])])


class TestRoundTrip:
    def test_fitted_preprocessor_serializes(self):
        from simfarm.models.preprocess import FittedPreprocessor

        spec = PreprocessorSpec(
            {
                "x": ColumnDirective(scaling="zscore", imputation="mean"),
                "c": ColumnDirective(encoding="onehot", imputation="mode"),
            }
        )
        table = [numeric("x", [1.0, 2.0, 3.0]), categorical("c", ["A", "B", "A"])]
        fp, result = preprocess(spec, table)
        back = FittedPreprocessor.from_dict(fp.to_dict())
        assert np.array_equal(back.transform(table).matrix, result.matrix)

    def test_default_spec_for_mixed_table(self):
        table = [numeric("x", [1.0, 2.0]), categorical("c", ["A", "B"])]
        spec = PreprocessorSpec.default_for(table)
        fp, result = preprocess(spec, table)
        assert result.matrix.shape == (2, 3)  # zscored x + 2 onehot levels
