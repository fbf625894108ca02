"""Diagonal amplification of the loss and the multiplier upper bounds."""

import logging
import math

import numpy as np

from ..model.errors import DomainError
from .base import AmplifierMode, AmplifierScope, AmplifierSpec, Layout, QuadraticLoss

logger = logging.getLogger(__name__)

MULTIPLIER_LEVELS = ("high", "medium", "low")


def amplify(loss: QuadraticLoss, amp: AmplifierSpec) -> QuadraticLoss:
    """Inflate the in-scope diagonal entries of every block.

    Multiplier mode replaces each in-scope diagonal ``d`` by ``delta * d``;
    explicit mode adds ``amp.gamma``. Under ``k_block_only`` the eta row and
    column of noncentered blocks are left untouched. The added amounts are
    accumulated in the returned loss's ``amplifier`` record.

    Raises:
        DomainError: If a noncentered loss is amplified with
            ``all_diagonal`` scope or explicit gamma has the wrong shape
    """
    if loss.layout == Layout.NONCENTERED and amp.scope != AmplifierScope.K_BLOCK_ONLY:
        raise DomainError("Noncentered losses may only amplify the K block diagonal")
    if amp.mode == AmplifierMode.NONE:
        return loss

    m, side = loss.m, loss.side
    idx = np.arange(side)
    mask = np.ones((m, side), dtype=bool)
    if loss.has_eta:
        mask[:, m] = False

    if amp.mode == AmplifierMode.MULTIPLIER:
        added = (amp.delta - 1.0) * loss.gamma[:, idx, idx] * mask
    else:
        gamma = np.asarray(amp.gamma, dtype=float)
        if gamma.shape == (m, m) and side == m + 1:
            gamma = np.hstack([gamma, np.zeros((m, 1))])
        if gamma.shape != (m, side):
            raise DomainError(
                f"Explicit amplifier must have shape {(m, m)} or {(m, side)}, "
                f"got {gamma.shape}"
            )
        added = gamma * mask

    if not np.any(added):
        return loss

    blocks = np.array(loss.gamma)
    blocks[:, idx, idx] += added
    delta = amp.delta if amp.mode == AmplifierMode.MULTIPLIER else loss.delta
    logger.info(f"Amplified {loss.layout.value} loss ({amp.mode.value}, delta={delta:g})")
    return QuadraticLoss(
        gamma=blocks,
        g=loss.g,
        layout=loss.layout,
        n=loss.n,
        spec=loss.spec,
        hspec=loss.hspec,
        amplifier=loss.amplifier + added,
        delta=delta,
    )


def multiplier_upper_bound(
    n: int, m: int, family: str = "truncated_gaussian", level: str = "high"
) -> float:
    """Largest multiplier keeping the amplified estimator's guarantees.

    Args:
        n: Sample size
        m: Dimension, at least 2
        family: ``truncated_gaussian`` or ``gaussian_full``
        level: ``high`` (the bound itself), ``medium`` or ``low`` (no
            amplification); only the truncated Gaussian family has levels

    Returns:
        Multiplier in ``[1, 2)``

    Example:
        >>> round(multiplier_upper_bound(80, 100), 4)
        1.8647
    """
    if n < 1 or m < 2:
        raise DomainError(f"Need n >= 1 and m >= 2, got n={n}, m={m}")
    if level not in MULTIPLIER_LEVELS:
        raise DomainError(f"Unknown multiplier level '{level}'")
    ratio = math.log(m) / n
    if family == "gaussian_full":
        if level != "high":
            raise DomainError("The full-support Gaussian bound has no levels")
        return 2.0 - 1.0 / (1.0 + 80.0 * math.sqrt(ratio))
    if family != "truncated_gaussian":
        raise DomainError(f"Unknown multiplier family '{family}'")
    if level == "low":
        return 1.0
    if level == "medium":
        return 2.0 - 1.0 / (1.0 + 24.0 * math.e * ratio)
    spread = max(6.0 * ratio, math.sqrt(6.0 * ratio))
    return 2.0 - 1.0 / (1.0 + 4.0 * math.e * spread)
