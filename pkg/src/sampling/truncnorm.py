"""Exact draws from normals truncated to the non-negative half line."""

from typing import Union

import numpy as np
from scipy import special

from ..model.errors import DomainError

ArrayLike = Union[float, np.ndarray]


def sample_truncated_normal_uni(
    mu: ArrayLike, sigma: ArrayLike, rng: np.random.Generator, size=None
) -> np.ndarray:
    """Inverse-CDF draws from ``N(mu, sigma^2)`` conditioned on ``[0, inf)``.

    ``mu`` and ``sigma`` broadcast against each other (and ``size``). With
    ``alpha = -mu / sigma`` the lower-tail form
    ``ndtri(Phi(alpha) + u Phi(-alpha))`` is used when ``alpha <= 0``; for
    ``alpha > 0`` the upper tail is inverted in log space so means far below
    zero stay accurate.
    """
    mu = np.asarray(mu, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if np.any(~(sigma > 0)):
        raise DomainError("sigma must be positive")
    shape = np.broadcast_shapes(mu.shape, sigma.shape) if size is None else size
    mu = np.broadcast_to(mu, shape)
    sigma = np.broadcast_to(sigma, shape)
    u = rng.random(shape)

    alpha = -mu / sigma
    z = np.empty(shape)
    low = alpha <= 0
    if np.any(low):
        a = alpha[low]
        z[low] = special.ndtri(special.ndtr(a) + u[low] * special.ndtr(-a))
    high = ~low
    if np.any(high):
        a = alpha[high]
        # upper tail: 1 - F(z) = (1 - u) * Phi(-alpha)
        log_tail = np.log1p(-u[high]) + special.log_ndtr(-a)
        z[high] = -special.ndtri_exp(log_tail)
    z = np.maximum(z, alpha)
    return np.maximum(mu + sigma * z, 0.0)
