"""Directions along which an unamplified loss is unbounded below."""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..loss.base import QuadraticLoss

logger = logging.getLogger(__name__)

KERNEL_RTOL = 1e-10


@dataclass(frozen=True)
class UnboundedDirection:
    """A kernel direction of one block with negative certificate.

    ``direction`` has the stacked shape ``(m, side)`` and is zero outside
    ``block``; its l1 norm is one so the penalized objective along
    ``a * direction`` equals ``a * certificate``.
    """

    block: int
    direction: np.ndarray
    certificate: float


def _kernel_basis(gamma_j: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(gamma_j)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    return v[:, w <= KERNEL_RTOL * scale]


def kernel_unbounded_direction(
    loss: QuadraticLoss, lam: float
) -> Optional[UnboundedDirection]:
    """Look for ``nu`` with ``Gamma nu = 0`` and ``-g' nu + lam |nu|_1 < 0``.

    Candidates per block are the kernel basis vectors with both signs and
    the projection of ``g_j`` onto the kernel, which maximizes ``g' nu``
    over unit l2 kernel vectors. The block with the most negative
    certificate wins; ``None`` means no candidate certifies unboundedness.
    """
    best: Optional[UnboundedDirection] = None
    for j in range(loss.m):
        gamma_j, g_j = loss.block(j)
        basis = _kernel_basis(np.asarray(gamma_j))
        if basis.shape[1] == 0:
            continue
        candidates = [basis[:, k] for k in range(basis.shape[1])]
        candidates.append(basis @ (basis.T @ g_j))
        threshold = -1e-12 * (1.0 + float(np.linalg.norm(g_j)))
        for nu in candidates:
            norm1 = float(np.sum(np.abs(nu)))
            if norm1 == 0.0:
                continue
            nu = nu / norm1
            if g_j @ nu < 0:
                nu = -nu
            certificate = float(-(g_j @ nu) + lam)
            if certificate < threshold and (
                best is None or certificate < best.certificate
            ):
                direction = np.zeros((loss.m, loss.side))
                direction[j] = nu
                best = UnboundedDirection(j, direction, certificate)

    if best is not None:
        logger.info(
            f"Loss is unbounded below at lambda={lam:g} along block {best.block} "
            f"(certificate {best.certificate:.3g})"
        )
    return best
