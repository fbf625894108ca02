"""Efficiency curves of the univariate estimators over a parameter grid."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from ..model.errors import DomainError, NumericError
from ..model.hfunc import HFunction
from .efficiency import asymptotic_variance, cramer_rao
from .estimators import Target
from .quadrature import QuadratureConfig

logger = logging.getLogger(__name__)

COLUMNS = ["target", "param0", "h_spec", "asy_var", "cr_bound", "efficiency", "status"]


@dataclass
class UnivariateStudy:
    """Grid of true parameters and weight functions to evaluate.

    Args:
        target: ``mu`` (variance known) or ``sigma2`` (mean known)
        known_value: The known variance, or the known mean
        grid: True values of the estimated parameter
        hspecs: Weight functions
    """

    target: Target
    known_value: float
    grid: Sequence[float]
    hspecs: List[HFunction] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.target = Target(self.target)
        self.grid = [float(v) for v in self.grid]
        if not self.grid:
            raise DomainError("Study grid is empty")
        if not self.hspecs:
            raise DomainError("Study needs at least one h function")
        if self.target == Target.MU and not self.known_value > 0:
            raise DomainError(f"Known variance must be positive, got {self.known_value}")
        if self.target == Target.SIGMA2 and any(v <= 0 for v in self.grid):
            raise DomainError("Variance grid values must be positive")


def run_study(
    study: UnivariateStudy, quad: Optional[QuadratureConfig] = None
) -> pd.DataFrame:
    """One row per ``(param0, h)`` pair; failed points keep a status message."""
    quad = quad or QuadratureConfig()
    rows = []
    for param0 in study.grid:
        try:
            bound = cramer_rao(study.target, param0, study.known_value, quad)
        except NumericError as e:
            logger.warning(f"Cramer-Rao bound failed at {param0:g}: {e}")
            bound = np.nan
        for h in study.hspecs:
            row = {
                "target": study.target.value,
                "param0": param0,
                "h_spec": h.spec_string(),
                "asy_var": np.nan,
                "cr_bound": bound,
                "efficiency": np.nan,
                "status": "ok",
            }
            try:
                var = asymptotic_variance(study.target, param0, study.known_value, h, quad)
                row["asy_var"] = var
                row["efficiency"] = bound / var
            except (NumericError, DomainError) as e:
                row["status"] = f"failed: {e}"
                logger.warning(f"Asymptotic variance of {h} failed at {param0:g}: {e}")
            else:
                if var < bound - 1e-9:
                    logger.warning(
                        f"{h} at {param0:g}: asymptotic variance {var:.6g} is below "
                        f"the Cramer-Rao bound {bound:.6g}"
                    )
            rows.append(row)
    logger.info(f"Univariate study evaluated {len(rows)} points")
    return pd.DataFrame(rows, columns=COLUMNS)
