"""Statistical analysis of result tables: auto-selected hypothesis tests,
distribution fitting, feature scores, Pareto fronts, outlier detection, EDA
summaries, and SVG plots."""

from .eda import EdaReport, eda_summary
from .features import feature_scores
from .fitting import FitReport, fit_distributions
from .hypothesis import TestReport, run_hypothesis_test
from .outliers import OutlierReport, detect_outliers
from .pareto import ParetoResult, pareto_front
from .plots import emit_plot

__all__ = [
    "EdaReport",
    "eda_summary",
    "feature_scores",
    "FitReport",
    "fit_distributions",
    "TestReport",
    "run_hypothesis_test",
    "OutlierReport",
    "detect_outliers",
    "ParetoResult",
    "pareto_front",
    "emit_plot",
]
