"""Penalized and unpenalized minimizers of the quadratic loss."""

from .base import (
    Estimate,
    EstimatePath,
    SolverConfig,
    edges_of,
    soft_threshold,
    support_of,
)
from .closed_form import closed_form
from .coordinate import coordinate_descent, penalized_objective, penalty_weights
from .kernel import UnboundedDirection, kernel_unbounded_direction
from .path import lambda_grid, lambda_max, solve_path

__all__ = [
    "Estimate",
    "EstimatePath",
    "SolverConfig",
    "UnboundedDirection",
    "closed_form",
    "coordinate_descent",
    "edges_of",
    "kernel_unbounded_direction",
    "lambda_grid",
    "lambda_max",
    "penalized_objective",
    "penalty_weights",
    "soft_threshold",
    "solve_path",
]
