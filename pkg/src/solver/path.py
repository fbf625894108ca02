"""Warm-started solution paths over a decreasing penalty grid."""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from ..loss.base import QuadraticLoss
from ..loss.profile import EtaRecovery
from ..model.errors import DomainError
from .base import Estimate, EstimatePath, SolverConfig
from .coordinate import coordinate_descent

logger = logging.getLogger(__name__)

DEFAULT_GRID_SIZE = 50
DEFAULT_MIN_RATIO = 0.01


def lambda_max(loss: QuadraticLoss, lambda_ratio: float = 1.0) -> float:
    """Smallest penalty at which the all-zero estimate is optimal.

    For noncentered losses with ``lambda_ratio == 0`` eta is free, so the
    bound is taken on the gradient with eta at its profiled optimum.
    """
    if not loss.has_eta:
        return float(np.max(np.abs(loss.g)))
    m = loss.m
    g1 = loss.g[:, :m]
    g2 = loss.g[:, m]
    if lambda_ratio == 0:
        gamma12 = loss.gamma[:, :m, m]
        gamma22 = loss.gamma[:, m, m]
        profiled = g1 - gamma12 * (g2 / gamma22)[:, None]
        return float(np.max(np.abs(profiled)))
    bound = float(np.max(np.abs(g1)))
    if math.isinf(lambda_ratio):
        return bound
    return max(bound, float(np.max(np.abs(g2))) / lambda_ratio)


def lambda_grid(
    lam_max: float,
    num: int = DEFAULT_GRID_SIZE,
    min_ratio: float = DEFAULT_MIN_RATIO,
) -> np.ndarray:
    """Log-spaced grid from ``lam_max`` down to ``min_ratio * lam_max``."""
    if not lam_max > 0:
        raise DomainError(f"lambda_max must be positive, got {lam_max}")
    if num < 1:
        raise DomainError("Grid needs at least one point")
    if not 0 < min_ratio < 1:
        raise DomainError(f"min_ratio must be in (0, 1), got {min_ratio}")
    if num == 1:
        return np.array([lam_max])
    return np.geomspace(lam_max, min_ratio * lam_max, num)


def solve_path(
    loss: QuadraticLoss,
    lambdas: Sequence[float],
    cfg: Optional[SolverConfig] = None,
    eta_recovery: Optional[EtaRecovery] = None,
) -> EstimatePath:
    """Solve at every grid point, warm starting each from the previous one.

    Args:
        loss: Loss to minimize
        lambdas: Strictly decreasing penalties
        cfg: Solver settings; ``lambda_ratio`` sets the eta penalty
        eta_recovery: When the loss had eta profiled out, rebuild eta on
            every returned estimate

    Raises:
        DomainError: If the grid is empty or not strictly decreasing
    """
    cfg = cfg or SolverConfig()
    lambdas = [float(lam) for lam in lambdas]
    if not lambdas:
        raise DomainError("Penalty grid is empty")
    if any(b >= a for a, b in zip(lambdas, lambdas[1:])):
        raise DomainError("Penalty grid must be strictly decreasing")

    entries = []
    previous: Optional[Estimate] = None
    for k, lam in enumerate(lambdas):
        est = coordinate_descent(
            loss, lam, cfg.lambda_eta(lam), init=previous, cfg=cfg
        )
        if previous is not None and len(est.edges) < len(previous.edges):
            logger.warning(
                f"Support shrank from {len(previous.edges)} to {len(est.edges)} "
                f"edges at lambda={lam:.4g}"
            )
        previous = est
        logger.debug(
            f"path {k + 1}/{len(lambdas)}: lambda={lam:.4g} "
            f"edges={len(est.edges)} sweeps={est.iterations}"
        )
        if eta_recovery is not None:
            est.eta = eta_recovery.recover(est.K)
        entries.append(est)

    unconverged = sum(not e.converged for e in entries)
    if unconverged:
        logger.warning(f"{unconverged} of {len(entries)} path entries did not converge")
    return EstimatePath(entries)
