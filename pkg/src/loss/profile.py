"""Elimination of eta from a noncentered loss by per-block Schur complements."""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..model.errors import DomainError, SingularSystemError
from .base import Layout, QuadraticLoss

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EtaRecovery:
    """Per-block pieces needed to rebuild eta from an estimate of K."""

    gamma22: np.ndarray
    gamma12: np.ndarray
    g2: np.ndarray

    def recover(self, K: np.ndarray) -> np.ndarray:
        """``eta_j = (g2_j - Gamma12_j' K[:, j]) / Gamma22_j``."""
        K = np.asarray(K, dtype=float)
        return (self.g2 - np.einsum("jk,kj->j", self.gamma12, K)) / self.gamma22


def profile_out_eta(loss: QuadraticLoss) -> Tuple[QuadraticLoss, EtaRecovery]:
    """Profile eta out of every block of a noncentered loss.

    Returns:
        The centered-layout loss in K alone and the data to recover eta

    Raises:
        DomainError: If the loss has no eta entries
        SingularSystemError: If some ``Gamma22_j`` is not positive
    """
    if loss.layout != Layout.NONCENTERED:
        raise DomainError("Only noncentered losses carry eta")
    m = loss.m
    gamma22 = np.array(loss.gamma[:, m, m])
    bad = np.nonzero(~(gamma22 > 0))[0]
    if bad.size:
        j = int(bad[0])
        raise SingularSystemError(
            f"Block {j}: eta curvature Gamma22 = {gamma22[j]:g} is not positive "
            "(h vanishes on every sample of this column)",
            block=j,
        )
    gamma12 = np.array(loss.gamma[:, :m, m])
    g2 = np.array(loss.g[:, m])

    outer = np.einsum("ji,jk->jik", gamma12, gamma12)
    schur = loss.gamma[:, :m, :m] - outer / gamma22[:, None, None]
    g_prof = loss.g[:, :m] - gamma12 * (g2 / gamma22)[:, None]
    k_loss = QuadraticLoss(
        gamma=schur,
        g=g_prof,
        layout=Layout.CENTERED,
        n=loss.n,
        spec=loss.spec,
        hspec=loss.hspec,
        amplifier=loss.amplifier[:, :m],
        delta=loss.delta,
    )
    logger.info(f"Profiled eta out of {m} blocks")
    return k_loss, EtaRecovery(gamma22=gamma22, gamma12=gamma12, g2=g2)
