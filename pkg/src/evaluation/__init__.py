"""Edge recovery metrics, population diagnostics and simulation experiments."""

from .diagnostics import DiagnosticsReport, population_diagnostics
from .experiment import (
    ExperimentResult,
    ExperimentSpec,
    TrialResult,
    Truth,
    build_loss,
    build_truth,
    fit_path,
    run_experiment,
    run_trial,
)
from .roc import RocCurve, auc, confusion, roc_from_path, vertical_average

__all__ = [
    "DiagnosticsReport",
    "ExperimentResult",
    "ExperimentSpec",
    "RocCurve",
    "TrialResult",
    "Truth",
    "auc",
    "build_loss",
    "build_truth",
    "confusion",
    "fit_path",
    "population_diagnostics",
    "roc_from_path",
    "run_experiment",
    "run_trial",
    "vertical_average",
]
