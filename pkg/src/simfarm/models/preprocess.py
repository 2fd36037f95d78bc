"""Column preprocessing with strictly fit-time statistics.

All scaling, encoding, and imputation statistics are learned from the fit
table and frozen into the :class:`FittedPreprocessor`; applying it to new
data can never change how earlier data transforms (no leakage).  Categorical
columns must be one-hot encoded to enter the numeric feature matrix; unseen
levels map to an all-zero block and are flagged in the transform metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DegenerateSampleError, InvalidArgumentError, ModelSpecError
from ..tables import DataColumn

__all__ = [
    "ColumnDirective",
    "PreprocessorSpec",
    "TransformResult",
    "FittedPreprocessor",
    "preprocess",
]

_SCALINGS = ("none", "minmax", "zscore")
_ENCODINGS = ("none", "onehot")
_IMPUTATIONS = ("none", "mean", "mode")


@dataclass(frozen=True)
class ColumnDirective:
    scaling: str = "none"
    encoding: str = "none"
    imputation: str = "none"

    def validate(self, name: str, kind: str) -> None:
        if self.scaling not in _SCALINGS:
            raise ModelSpecError(f"column {name!r}: unknown scaling {self.scaling!r}")
        if self.encoding not in _ENCODINGS:
            raise ModelSpecError(f"column {name!r}: unknown encoding {self.encoding!r}")
        if self.imputation not in _IMPUTATIONS:
            raise ModelSpecError(f"column {name!r}: unknown imputation {self.imputation!r}")
        if kind == "numeric":
            if self.encoding == "onehot":
                raise ModelSpecError(f"column {name!r}: onehot applies to categorical columns only")
        else:
            if self.scaling != "none":
                raise ModelSpecError(
                    f"column {name!r}: scaling {self.scaling!r} applies to numeric columns only"
                )
            if self.imputation == "mean":
                raise ModelSpecError(f"column {name!r}: mean imputation needs a numeric column")
            if self.encoding != "onehot":
                raise ModelSpecError(
                    f"column {name!r}: categorical columns must be one-hot encoded "
                    "to enter the feature matrix"
                )


@dataclass
class PreprocessorSpec:
    directives: dict[str, ColumnDirective]

    @classmethod
    def default_for(cls, table: list[DataColumn]) -> "PreprocessorSpec":
        """zscore + mean-impute numerics, onehot + mode-impute categoricals."""
        directives = {}
        for col in table:
            if col.kind == "numeric":
                directives[col.name] = ColumnDirective(scaling="zscore", imputation="mean")
            else:
                directives[col.name] = ColumnDirective(encoding="onehot", imputation="mode")
        return cls(directives=directives)


@dataclass
class TransformResult:
    matrix: np.ndarray
    feature_names: list[str]
    unseen: list[tuple[int, str, str]] = field(default_factory=list)


@dataclass
class _ColumnStats:
    kind: str
    directive: ColumnDirective
    impute_value: object = None
    mean: float | None = None
    sd: float | None = None
    min: float | None = None
    max: float | None = None
    levels: list[str] = field(default_factory=list)


class FittedPreprocessor:
    """Frozen per-column statistics; ``transform`` only reads them."""

    def __init__(self, order: list[str], stats: dict[str, _ColumnStats]):
        self._order = order
        self._stats = stats

    @property
    def feature_names(self) -> list[str]:
        names = []
        for name in self._order:
            st = self._stats[name]
            if st.kind == "numeric":
                names.append(name)
            else:
                names.extend(f"{name}={level}" for level in st.levels)
        return names

    def transform(self, table: list[DataColumn]) -> TransformResult:
        by_name = {c.name: c for c in table}
        missing = [n for n in self._order if n not in by_name]
        if missing:
            raise InvalidArgumentError(f"table lacks fitted columns {missing}")
        n = len(table[0]) if table else 0
        blocks: list[np.ndarray] = []
        unseen: list[tuple[int, str, str]] = []
        for name in self._order:
            st = self._stats[name]
            col = by_name[name]
            if col.kind != st.kind:
                raise InvalidArgumentError(f"column {name!r} changed kind since fit")
            if st.kind == "numeric":
                x = col.values.astype(np.float64).copy()
                nan = np.isnan(x)
                if nan.any():
                    if st.directive.imputation == "none":
                        raise InvalidArgumentError(
                            f"column {name!r} has missing values and no imputation directive"
                        )
                    x[nan] = st.impute_value
                if st.directive.scaling == "minmax":
                    span = st.max - st.min
                    x = (x - st.min) / span
                elif st.directive.scaling == "zscore":
                    x = (x - st.mean) / st.sd
                blocks.append(x.reshape(-1, 1))
            else:
                block = np.zeros((n, len(st.levels)))
                level_pos = {lv: i for i, lv in enumerate(st.levels)}
                for row, v in enumerate(col.values):
                    if v is None:
                        if st.directive.imputation == "none":
                            raise InvalidArgumentError(
                                f"column {name!r} has missing values and no imputation directive"
                            )
                        v = st.impute_value
                    pos = level_pos.get(v)
                    if pos is None:
                        unseen.append((row, name, v))
                    else:
                        block[row, pos] = 1.0
                blocks.append(block)
        matrix = np.hstack(blocks) if blocks else np.empty((n, 0))
        return TransformResult(matrix=matrix, feature_names=self.feature_names, unseen=unseen)

    def to_dict(self) -> dict:
        out = {"order": self._order, "columns": {}}
        for name, st in self._stats.items():
            out["columns"][name] = {
                "kind": st.kind,
                "scaling": st.directive.scaling,
                "encoding": st.directive.encoding,
                "imputation": st.directive.imputation,
                "impute_value": st.impute_value,
                "mean": st.mean,
                "sd": st.sd,
                "min": st.min,
                "max": st.max,
                "levels": st.levels,
            }
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "FittedPreprocessor":
        stats = {}
        for name, entry in doc["columns"].items():
            stats[name] = _ColumnStats(
                kind=entry["kind"],
                directive=ColumnDirective(
                    scaling=entry["scaling"],
                    encoding=entry["encoding"],
                    imputation=entry["imputation"],
                ),
                impute_value=entry["impute_value"],
                mean=entry["mean"],
                sd=entry["sd"],
                min=entry["min"],
                max=entry["max"],
                levels=list(entry["levels"]),
            )
        return cls(order=list(doc["order"]), stats=stats)


def fit_preprocessor(spec: PreprocessorSpec, table: list[DataColumn]) -> FittedPreprocessor:
    by_name = {c.name: c for c in table}
    order = []
    stats: dict[str, _ColumnStats] = {}
    for name, directive in spec.directives.items():
        if name not in by_name:
            raise InvalidArgumentError(f"directive refers to unknown column {name!r}")
        col = by_name[name]
        directive.validate(name, col.kind)
        order.append(name)
        st = _ColumnStats(kind=col.kind, directive=directive)
        if col.kind == "numeric":
            present = col.non_missing()
            if present.size == 0:
                raise InvalidArgumentError(f"column {name!r} is entirely missing")
            if directive.imputation == "mean":
                st.impute_value = float(present.mean())
            elif directive.imputation == "mode":
                values, counts = np.unique(present, return_counts=True)
                st.impute_value = float(values[np.argmax(counts)])
            if directive.scaling == "minmax":
                st.min, st.max = float(present.min()), float(present.max())
                if st.max == st.min:
                    raise DegenerateSampleError(
                        f"column {name!r}: minmax scaling needs a nonzero range"
                    )
            elif directive.scaling == "zscore":
                st.mean = float(present.mean())
                st.sd = float(present.std(ddof=0))
                if st.sd == 0.0:
                    raise DegenerateSampleError(
                        f"column {name!r}: zscore scaling needs nonzero standard deviation"
                    )
        else:
            st.levels = col.levels()
            if not st.levels:
                raise InvalidArgumentError(f"column {name!r} is entirely missing")
            if directive.imputation == "mode":
                counts: dict[str, int] = {}
                for v in col.values:
                    if v is not None:
                        counts[v] = counts.get(v, 0) + 1
                st.impute_value = max(counts, key=lambda k: (counts[k], -st.levels.index(k)))
        stats[name] = st
    return FittedPreprocessor(order=order, stats=stats)


def preprocess(
    spec: PreprocessorSpec,
    fit_table: list[DataColumn],
    apply_table: list[DataColumn] | None = None,
) -> tuple[FittedPreprocessor, TransformResult]:
    """Fit on ``fit_table`` and transform ``apply_table`` (default: the fit table)."""
    fp = fit_preprocessor(spec, fit_table)
    result = fp.transform(apply_table if apply_table is not None else fit_table)
    return fp, result
