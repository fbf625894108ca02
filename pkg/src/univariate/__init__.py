"""Univariate truncated normal estimators and their efficiency."""

from .efficiency import asymptotic_variance, cramer_rao, efficiency
from .estimators import Target, estimate_mu, estimate_sigma2
from .quadrature import QuadratureConfig, TruncatedNormal
from .study import UnivariateStudy, run_study

__all__ = [
    "QuadratureConfig",
    "Target",
    "TruncatedNormal",
    "UnivariateStudy",
    "asymptotic_variance",
    "cramer_rao",
    "efficiency",
    "estimate_mu",
    "estimate_sigma2",
    "run_study",
]
