"""Unpenalized minimizer by per-block linear solves."""

import logging
from typing import Optional

import numpy as np
import scipy.linalg

from ..loss.base import QuadraticLoss
from ..model.errors import SingularSystemError
from .base import Estimate, SolverConfig

logger = logging.getLogger(__name__)

PD_RTOL = 1e-10


def _require_pd(gamma_j: np.ndarray, j: int) -> None:
    w = np.linalg.eigvalsh(gamma_j)
    scale = max(float(np.max(np.abs(w))), np.finfo(float).tiny)
    if w[0] <= PD_RTOL * scale:
        raise SingularSystemError(
            f"Block {j} is not positive definite (smallest eigenvalue {w[0]:.3g}); "
            "amplify the loss or add a penalty",
            block=j,
        )


def closed_form(loss: QuadraticLoss, cfg: Optional[SolverConfig] = None) -> Estimate:
    """Solve ``Gamma_j psi_j = g_j`` for every block.

    In symmetric mode the K part is averaged with its transpose and the
    largest pre-averaging discrepancy is kept in ``asymmetry``.

    Raises:
        SingularSystemError: If some block is not positive definite
    """
    cfg = cfg or SolverConfig()
    psi = np.empty((loss.m, loss.side))
    for j in range(loss.m):
        gamma_j, g_j = loss.block(j)
        _require_pd(gamma_j, j)
        psi[j] = scipy.linalg.solve(gamma_j, g_j, assume_a="pos")

    K, eta = loss.unpack(psi)
    asymmetry = float(np.max(np.abs(K - K.T))) if K.size else 0.0
    if cfg.symmetric:
        K = 0.5 * (K + K.T)
        psi = loss.pack(K, eta)
    logger.debug(f"Closed form solved {loss.m} blocks, asymmetry {asymmetry:.3g}")
    return Estimate(
        K=K,
        eta=eta,
        lam=0.0,
        iterations=0,
        converged=True,
        loss_value=loss.smooth_value(psi),
        asymmetry=asymmetry,
    )
