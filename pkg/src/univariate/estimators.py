"""h-score matching estimators for the univariate truncated normal.

With ``sigma2`` known the mean is estimated by
``sum(h(X) X - sigma2 h'(X)) / sum(h(X))``; with ``mu`` known the variance
by ``sum(h(X)(X - mu)^2) / sum(h(X) + h'(X)(X - mu))``.
"""

import math
from enum import Enum

import numpy as np

from ..model.errors import DomainError, NumericError
from ..model.hfunc import HFunction


class Target(str, Enum):
    MU = "mu"
    SIGMA2 = "sigma2"


def _positive_sample(data: np.ndarray) -> np.ndarray:
    x = np.asarray(data, dtype=float).reshape(-1)
    if x.size == 0:
        raise DomainError("Sample is empty")
    if np.any(~(x > 0)):
        i = int(np.argmax(~(x > 0)))
        raise DomainError(f"Entry {i + 1} of the sample is {x[i]}; positive data required")
    return x


def estimate_mu(data: np.ndarray, sigma2: float, h: HFunction) -> float:
    """Mean estimate when the variance parameter is known.

    Raises:
        DomainError: On empty or non-positive data or ``sigma2 <= 0``
        NumericError: If ``sum h(X)`` is zero
    """
    if not sigma2 > 0:
        raise DomainError(f"sigma2 must be positive, got {sigma2}")
    x = _positive_sample(data)
    hx, dhx = h.values(x)
    denom = float(np.sum(hx))
    if denom == 0:
        raise NumericError(f"sum of h over the sample is zero for {h}")
    return float(np.sum(hx * x - sigma2 * dhx)) / denom


def estimate_sigma2(data: np.ndarray, mu: float, h: HFunction) -> float:
    """Variance estimate when the mean parameter is known.

    Raises:
        DomainError: On empty or non-positive data
        NumericError: If the denominator vanishes
    """
    if not math.isfinite(mu):
        raise DomainError(f"mu must be finite, got {mu}")
    x = _positive_sample(data)
    hx, dhx = h.values(x)
    r = x - mu
    denom = float(np.sum(hx + dhx * r))
    if denom == 0:
        raise NumericError(f"Variance estimator denominator is zero for {h}")
    return float(np.sum(hx * r * r)) / denom
