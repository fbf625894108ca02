"""Unnormalized log-density of pairwise interaction power models and its partials."""

from typing import Tuple

import numpy as np

from .base import InteractionParams, ModelSpec
from .errors import DomainError


def _eta_statistic(spec: ModelSpec, x: np.ndarray) -> np.ndarray:
    """``(x^b - 1) / b``, or ``log x`` when ``b == 0``."""
    if spec.log_eta_term:
        return np.log(x)
    return (np.power(x, spec.b) - 1.0) / spec.b


def log_density_unnorm(spec: ModelSpec, params: InteractionParams, x: np.ndarray) -> float:
    """Evaluate ``-(1/2a) x^a' K x^a + eta' (x^b - 1)/b`` at one point.

    Args:
        spec: Model exponents
        params: Interaction matrix and eta (ignored when centered)
        x: Length-m non-negative point

    Returns:
        Unnormalized log-density

    Raises:
        DomainError: On dimension mismatch, negative entries, or a zero
            entry under the ``b == 0`` log convention

    Example:
        >>> spec = ModelSpec(a=1.0, b=1.0)
        >>> log_density_unnorm(spec, InteractionParams(np.eye(2)), np.ones(2))
        -1.0
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != params.m:
        raise DomainError(f"Point has length {x.shape[0]} but the model has m={params.m}")
    if np.any(x < 0):
        raise DomainError(f"Point must be non-negative, got {x.tolist()}")
    xa = np.power(x, spec.a)
    value = -0.5 / spec.a * float(xa @ params.K @ xa)
    if spec.centered:
        return value
    if spec.log_eta_term and np.any(x == 0):
        j = int(np.argmax(x == 0))
        raise DomainError(f"Coordinate {j + 1} is zero but b = 0 requires x > 0")
    return value + float(params.eta @ _eta_statistic(spec, x))


def score_partials(
    spec: ModelSpec, params: InteractionParams, x: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """First and second coordinate partials of the log-density per sample.

    Column ``j`` of ``K`` parametrizes coordinate ``j``, i.e.
    ``d_j log p = -x_j^(a-1) sum_k K[k, j] x_k^a + eta_j x_j^(b-1)``.

    Args:
        spec: Model exponents
        params: Parameters (K need not be symmetric)
        x: ``n x m`` sample matrix

    Returns:
        Tuple ``(d1, d2)`` of ``n x m`` arrays holding ``d_j log p`` and
        ``d_jj log p``
    """
    a, b = spec.a, spec.b
    xa = np.power(x, a)
    lin = xa @ params.K
    with np.errstate(divide="ignore", invalid="ignore"):
        d1 = -np.power(x, a - 1.0) * lin
        d2 = -a * np.power(x, 2 * a - 2.0) * np.diag(params.K)
        if a != 1.0:
            d2 = d2 - (a - 1.0) * np.power(x, a - 2.0) * lin
        if not spec.centered:
            d1 = d1 + params.eta * np.power(x, b - 1.0)
            if b != 1.0:
                d2 = d2 + params.eta * (b - 1.0) * np.power(x, b - 2.0)
    return d1, d2
