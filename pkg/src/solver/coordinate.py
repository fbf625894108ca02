"""Coordinate descent for the l1-penalized block quadratic.

The objective is ``sum_j 0.5 psi_j' Gamma_j psi_j - g_j' psi_j`` plus
``lambda_K |K|_1 + lambda_eta |eta|_1`` where ``psi_j = (K[:, j], eta_j)``.
A residual ``R_j = Gamma_j psi_j`` is maintained per block so each update
costs one column of one (or two) blocks.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..loss.base import QuadraticLoss
from ..model.errors import DomainError, SingularSystemError
from .base import Estimate, SolverConfig, soft_threshold

logger = logging.getLogger(__name__)


def penalty_weights(
    loss: QuadraticLoss, lambda_k: float, lambda_eta: float, penalize_diagonal: bool
) -> np.ndarray:
    """Per-entry l1 weights laid out like the stacked parameters."""
    m = loss.m
    weights = np.full((m, loss.side), float(lambda_k))
    if not penalize_diagonal:
        weights[np.arange(m), np.arange(m)] = 0.0
    if loss.has_eta:
        weights[:, m] = lambda_eta
    return weights


def penalized_objective(loss: QuadraticLoss, psi: np.ndarray, weights: np.ndarray) -> float:
    finite = np.where(np.isinf(weights), 0.0, weights)
    return loss.smooth_value(psi) + float(np.sum(finite * np.abs(psi)))


class _Sweeper:
    """Mutable state of one coordinate descent run."""

    def __init__(
        self,
        loss: QuadraticLoss,
        psi: np.ndarray,
        weights: np.ndarray,
        check_monotone: bool,
    ) -> None:
        self.loss = loss
        self.G = loss.gamma
        self.g = loss.g
        self.psi = psi
        self.weights = weights
        self.R = np.einsum("jik,jk->ji", self.G, psi)
        self.check_monotone = check_monotone
        self.objective = penalized_objective(loss, psi, weights) if check_monotone else 0.0

    def _assert_monotone(self) -> None:
        value = penalized_objective(self.loss, self.psi, self.weights)
        slack = 1e-12 * (1.0 + abs(self.objective))
        assert value <= self.objective + slack, (
            f"objective increased from {self.objective!r} to {value!r}"
        )
        self.objective = value

    def single(self, j: int, ell: int) -> float:
        """Update entry ``ell`` of block ``j`` alone; returns the absolute change."""
        curv = self.G[j, ell, ell]
        cur = self.psi[j, ell]
        grad = self.R[j, ell] - self.g[j, ell]
        lam = self.weights[j, ell]
        if cur == 0.0 and abs(grad) <= lam:
            return 0.0
        new = soft_threshold(curv * cur - grad, lam) / curv
        change = new - cur
        if change == 0.0:
            return 0.0
        self.psi[j, ell] = new
        self.R[j] += self.G[j, :, ell] * change
        if self.check_monotone:
            self._assert_monotone()
        return abs(change)

    def pair(self, i: int, j: int, curv: float) -> float:
        """Update the shared variable ``K[i, j] = K[j, i]`` across blocks i and j."""
        cur = self.psi[j, i]
        grad = (self.R[j, i] - self.g[j, i]) + (self.R[i, j] - self.g[i, j])
        lam = 2.0 * self.weights[j, i]
        if cur == 0.0 and abs(grad) <= lam:
            return 0.0
        new = soft_threshold(curv * cur - grad, lam) / curv
        change = new - cur
        if change == 0.0:
            return 0.0
        self.psi[j, i] = new
        self.psi[i, j] = new
        self.R[j] += self.G[j, :, i] * change
        self.R[i] += self.G[i, :, j] * change
        if self.check_monotone:
            self._assert_monotone()
        return abs(change)


def _check_curvature(loss: QuadraticLoss, allowed: np.ndarray) -> None:
    idx = np.arange(loss.side)
    diag = loss.gamma[:, idx, idx]
    bad = np.argwhere(allowed & ~(diag > 0))
    if bad.size:
        j, ell = bad[0]
        raise SingularSystemError(
            f"Block {j} has non-positive diagonal entry {ell} ({diag[j, ell]:g}); "
            "the data column may be degenerate, or amplify the loss",
            block=int(j),
        )


def coordinate_descent(
    loss: QuadraticLoss,
    lambda_k: float,
    lambda_eta: float = 0.0,
    init: Optional[Estimate] = None,
    cfg: Optional[SolverConfig] = None,
    allowed: Optional[np.ndarray] = None,
) -> Estimate:
    """Minimize the penalized loss by cyclic coordinate descent.

    Args:
        loss: Loss whose blocks are positive definite when the penalty is small
        lambda_k: Penalty on K entries
        lambda_eta: Penalty on eta entries; ``inf`` keeps eta at zero
        init: Warm start (zero when omitted)
        cfg: Solver settings
        allowed: Optional boolean mask shaped like the stacked parameters;
            entries outside the mask are held at zero

    Returns:
        Estimate flagged ``converged=False`` when ``max_iter`` sweeps did not
        reach ``tol``

    Raises:
        DomainError: On negative penalties
        SingularSystemError: When an active coordinate has zero curvature
    """
    cfg = cfg or SolverConfig()
    if lambda_k < 0 or lambda_eta < 0:
        raise DomainError("Penalties must be non-negative")
    m, side = loss.m, loss.side

    mask = np.ones((m, side), dtype=bool) if allowed is None else np.array(allowed, bool)
    if loss.has_eta and math.isinf(lambda_eta):
        mask[:, m] = False
    if cfg.symmetric:
        # a pair is free only when both of its sides are
        mask[:, :m] &= mask[:, :m].T.copy()
    _check_curvature(loss, mask)

    if init is None:
        psi = np.zeros((m, side))
    else:
        K0 = init.K if not cfg.symmetric else 0.5 * (init.K + init.K.T)
        psi = loss.pack(K0, init.eta)
    psi[~mask] = 0.0

    weights = penalty_weights(loss, lambda_k, lambda_eta, cfg.penalize_diagonal)
    state = _Sweeper(loss, psi, weights, cfg.check_monotone)

    if cfg.symmetric:
        iterations, converged = _run_symmetric(state, loss, mask, cfg)
    else:
        iterations, converged = _run_blockwise(state, loss, mask, cfg)

    if not converged:
        logger.warning(
            f"Coordinate descent stopped after {cfg.max_iter} sweeps at "
            f"lambda={lambda_k:.4g} without reaching tol={cfg.tol:g}"
        )
    K, eta = loss.unpack(state.psi)
    return Estimate(
        K=K,
        eta=eta,
        lam=float(lambda_k),
        iterations=iterations,
        converged=converged,
        loss_value=penalized_objective(loss, state.psi, weights),
    )


def _run_symmetric(
    state: _Sweeper, loss: QuadraticLoss, mask: np.ndarray, cfg: SolverConfig
) -> Tuple[int, bool]:
    m = loss.m
    idx = np.arange(m)
    kdiag = loss.gamma[:, idx, idx]
    pair_curv = kdiag + kdiag.T
    pairs = [
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if mask[j, i] and mask[i, j]
    ]
    etas = [j for j in range(m) if loss.has_eta and mask[j, m]]

    for sweep in range(1, cfg.max_iter + 1):
        biggest = 0.0
        pos = 0
        for i in range(m):
            if mask[i, i]:
                biggest = max(biggest, state.single(i, i))
            while pos < len(pairs) and pairs[pos][0] == i:
                _, j = pairs[pos]
                biggest = max(biggest, state.pair(i, j, pair_curv[i, j]))
                pos += 1
        for j in etas:
            biggest = max(biggest, state.single(j, m))
        logger.debug(f"sweep {sweep}: max change {biggest:.3e}")
        if biggest < cfg.tol:
            return sweep, True
    return cfg.max_iter, False


def _run_blockwise(
    state: _Sweeper, loss: QuadraticLoss, mask: np.ndarray, cfg: SolverConfig
) -> Tuple[int, bool]:
    iterations = 0
    converged = True
    for j in range(loss.m):
        entries = np.nonzero(mask[j])[0].tolist()
        done = False
        for sweep in range(1, cfg.max_iter + 1):
            biggest = 0.0
            for ell in entries:
                biggest = max(biggest, state.single(j, ell))
            if biggest < cfg.tol:
                done = True
                break
        iterations = max(iterations, sweep)
        converged = converged and done
    return iterations, converged
