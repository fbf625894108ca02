"""Asymptotic variances and Cramer-Rao bounds of the univariate estimators.

For ``target == "mu"`` the true law is ``TN(param0, known)`` (``known`` is
the variance); for ``target == "sigma2"`` it is ``TN(known, param0)``.
"""

import logging
import math
from typing import Optional, Union

import numpy as np

from ..model.base import ModelSpec
from ..model.errors import DomainError
from ..model.hfunc import HFunction, h_admissible
from .estimators import Target
from .quadrature import QuadratureConfig, TruncatedNormal

logger = logging.getLogger(__name__)

TRUNCATED_NORMAL = ModelSpec(a=1.0, b=1.0)


def _law(
    target: Target, param0: float, known: float, quad: QuadratureConfig
) -> TruncatedNormal:
    if target == Target.MU:
        if not known > 0:
            raise DomainError(f"Known variance must be positive, got {known}")
        return TruncatedNormal(param0, math.sqrt(known), quad)
    if not param0 > 0:
        raise DomainError(f"True variance must be positive, got {param0}")
    return TruncatedNormal(known, math.sqrt(param0), quad)


def _check_h(target: Target, h: HFunction, law: TruncatedNormal) -> None:
    # the boundary term h(x) p(x) (x - mu) vanishes at 0 on its own when mu == 0
    if target == Target.SIGMA2 and law.mu == 0:
        return
    verdict = h_admissible(h, TRUNCATED_NORMAL)
    if not verdict:
        logger.warning(f"{h} may bias the {target.value} estimator: {verdict.reason}")


def asymptotic_variance(
    target: Union[Target, str],
    param0: float,
    known: float,
    h: HFunction,
    quad: Optional[QuadratureConfig] = None,
) -> float:
    """Limiting variance of ``sqrt(n)`` times the estimation error.

    Mean: ``E[sigma^2 h^2 + sigma^4 h'^2] / E[h]^2``. Variance:
    ``(2 sigma^6 E[h^2 r^2] + sigma^8 E[h'^2 r^2]) / E[h r^2]^2`` with
    ``r = X - mu``.

    Raises:
        QuadratureError: If an expectation diverges
    """
    target = Target(target)
    quad = quad or QuadratureConfig()
    law = _law(target, param0, known, quad)
    _check_h(target, h, law)

    def hv(x: np.ndarray) -> np.ndarray:
        return h.values(x)[0]

    def dhv(x: np.ndarray) -> np.ndarray:
        return h.values(x)[1]

    s2 = law.sigma ** 2
    if target == Target.MU:
        num = law.expect(lambda x: s2 * hv(x) ** 2 + s2 * s2 * dhv(x) ** 2, "numerator")
        den = law.expect(hv, "E[h]")
    else:
        mu = law.mu
        num = 2 * s2 ** 3 * law.expect(lambda x: hv(x) ** 2 * (x - mu) ** 2, "E[h^2 r^2]")
        num += s2 ** 4 * law.expect(lambda x: dhv(x) ** 2 * (x - mu) ** 2, "E[h'^2 r^2]")
        den = law.expect(lambda x: hv(x) * (x - mu) ** 2, "E[h r^2]")
    if den == 0:
        raise DomainError(f"{h} has zero expectation under the true law")
    return num / (den * den)


def cramer_rao(
    target: Union[Target, str],
    param0: float,
    known: float,
    quad: Optional[QuadratureConfig] = None,
) -> float:
    """``sigma^4 / var(X)`` for the mean and ``4 sigma^8 / var((X - mu)^2)``
    for the variance."""
    target = Target(target)
    quad = quad or QuadratureConfig()
    law = _law(target, param0, known, quad)
    s2 = law.sigma ** 2
    if target == Target.MU:
        return s2 * s2 / law.var(lambda x: x)
    mu = law.mu
    return 4 * s2 ** 4 / law.var(lambda x: (x - mu) ** 2)


def efficiency(
    target: Union[Target, str],
    param0: float,
    known: float,
    h: HFunction,
    quad: Optional[QuadratureConfig] = None,
) -> float:
    """Cramer-Rao bound divided by the asymptotic variance."""
    bound = cramer_rao(target, param0, known, quad)
    value = bound / asymptotic_variance(target, param0, known, h, quad)
    if value > 1 + 1e-9:
        logger.warning(
            f"Efficiency {value:.4f} of {h} at {param0:g} exceeds 1; "
            "the estimator is biased here"
        )
    return value
