"""Expectations under a univariate normal truncated to ``[0, inf)``."""

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

import numpy as np
from scipy import integrate, special

from ..model.errors import DomainError, QuadratureError

logger = logging.getLogger(__name__)


@dataclass
class QuadratureConfig:
    """Adaptive quadrature settings.

    Args:
        rel_tol: Relative tolerance passed to the integrator
        abs_tol: Absolute tolerance passed to the integrator
        tail_mass: Probability mass allowed beyond the upper limit
        limit: Maximum number of subintervals
        magnitude_guard: Results larger than this are treated as divergent
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    tail_mass: float = 1e-12
    limit: int = 200
    magnitude_guard: float = 1e12

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0 and self.abs_tol >= 0):
            raise DomainError("Quadrature tolerances must be positive")
        if not 0 < self.tail_mass < 1:
            raise DomainError(f"tail_mass must be in (0, 1), got {self.tail_mass}")
        if self.limit < 1:
            raise DomainError("limit must be at least 1")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rel_tol": self.rel_tol,
            "abs_tol": self.abs_tol,
            "tail_mass": self.tail_mass,
            "limit": self.limit,
            "magnitude_guard": self.magnitude_guard,
        }


class TruncatedNormal:
    """``N(mu, sigma^2)`` conditioned on ``[0, inf)``."""

    def __init__(
        self, mu: float, sigma: float, cfg: Optional[QuadratureConfig] = None
    ) -> None:
        if not sigma > 0:
            raise DomainError(f"sigma must be positive, got {sigma}")
        self.mu = float(mu)
        self.sigma = float(sigma)
        self.cfg = cfg or QuadratureConfig()
        # log P(N(mu, sigma^2) >= 0), accurate when the mass is tiny
        self.log_mass = float(special.log_ndtr(self.mu / self.sigma))
        self.upper = self._upper_limit()

    def log_pdf(self, x: np.ndarray) -> np.ndarray:
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        return -0.5 * z * z - math.log(self.sigma * math.sqrt(2 * math.pi)) - self.log_mass

    def pdf(self, x: np.ndarray) -> np.ndarray:
        return np.exp(self.log_pdf(x))

    def _upper_limit(self) -> float:
        log_target = math.log(self.cfg.tail_mass)
        width = self.sigma
        start = max(self.mu, 0.0)
        for _ in range(200):
            upper = start + width
            log_tail = special.log_ndtr(-(upper - self.mu) / self.sigma) - self.log_mass
            if log_tail < log_target:
                return upper
            width *= 2
        raise QuadratureError(f"Could not bound the tail of TN({self.mu}, {self.sigma}^2)")

    def expect(self, f: Callable[[np.ndarray], np.ndarray], label: str = "") -> float:
        """``E[f(X)]`` by adaptive quadrature on ``(0, upper)``.

        Raises:
            QuadratureError: If the integrator reports a non-finite value or
                the result exceeds the magnitude guard
        """
        cfg = self.cfg

        def integrand(x: float) -> float:
            point = np.array([x])
            return float(f(point)[0] * self.pdf(point)[0])

        points = [self.mu] if 0 < self.mu < self.upper else None
        with np.errstate(all="ignore"):
            value, err = integrate.quad(
                integrand,
                0.0,
                self.upper,
                epsabs=cfg.abs_tol,
                epsrel=cfg.rel_tol,
                limit=cfg.limit,
                points=points,
            )
        if not math.isfinite(value) or abs(value) > cfg.magnitude_guard:
            raise QuadratureError(
                f"Expectation {label or 'of integrand'} diverges under "
                f"TN({self.mu:g}, {self.sigma:g}^2): value {value:g}"
            )
        if err > max(cfg.abs_tol, cfg.rel_tol * abs(value)) * 100:
            logger.warning(
                f"Quadrature for {label or 'integrand'} reached only error {err:.2g}"
            )
        return float(value)

    def mean(self) -> float:
        return self.expect(lambda x: x, "E[X]")

    def var(self, g: Callable[[np.ndarray], np.ndarray]) -> float:
        """Variance of ``g(X)``, computed about a first-pass mean."""
        center = self.expect(g, "E[g]")
        shift = self.expect(lambda x: g(x) - center, "E[g - c]")
        second = self.expect(lambda x: (g(x) - center) ** 2, "E[(g - c)^2]")
        return max(second - shift * shift, 0.0)
