"""Edge recovery metrics: confusion rates, ROC staircases and AUC."""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from ..model.errors import DomainError
from ..selection.ebic import normalize_support
from ..solver.base import EstimatePath, Pair

logger = logging.getLogger(__name__)


@dataclass
class RocCurve:
    """Points ``(fpr, tpr)`` ordered by fpr, from ``(0, 0)`` to ``(1, 1)``."""

    fpr: np.ndarray
    tpr: np.ndarray

    def __post_init__(self) -> None:
        self.fpr = np.asarray(self.fpr, dtype=float)
        self.tpr = np.asarray(self.tpr, dtype=float)
        if self.fpr.shape != self.tpr.shape or self.fpr.ndim != 1:
            raise DomainError("fpr and tpr must be 1-D arrays of equal length")
        if np.any(np.diff(self.fpr) < 0):
            raise DomainError("fpr must be nondecreasing")

    @classmethod
    def from_points(cls, points: Iterable[Tuple[float, float]]) -> "RocCurve":
        """Augment with the corners, sort, and make tpr a running maximum."""
        pts = [(0.0, 0.0), *points, (1.0, 1.0)]
        pts.sort()
        fpr = np.array([p[0] for p in pts])
        tpr = np.maximum.accumulate(np.array([p[1] for p in pts]))
        return cls(fpr, tpr)

    def points(self) -> List[Tuple[float, float]]:
        return list(zip(self.fpr.tolist(), self.tpr.tolist()))


def confusion(
    est_support: Iterable[Pair], true_support: Iterable[Pair], m: int
) -> Tuple[float, float]:
    """True and false positive rates of recovered off-diagonal edges.

    Ordered and unordered pair encodings give the same result; diagonal
    pairs are ignored.

    Raises:
        DomainError: If the true support has no off-diagonal edge
    """
    est = normalize_support(est_support)
    true = normalize_support(true_support)
    if not true:
        raise DomainError("True support has no off-diagonal edges; TPR is undefined")
    total = m * (m - 1) // 2
    negatives = total - len(true)
    tpr = len(est & true) / len(true)
    fpr = len(est - true) / negatives if negatives > 0 else 0.0
    return tpr, fpr


def roc_from_path(path: EstimatePath, true_support: Iterable[Pair], m: int) -> RocCurve:
    true = normalize_support(true_support)
    points = []
    for est in path:
        tpr, fpr = confusion(est.edges, true, m)
        points.append((fpr, tpr))
    return RocCurve.from_points(points)


def auc(curve: RocCurve) -> float:
    return float(trapezoid(curve.tpr, curve.fpr))


def _tpr_at(curve: RocCurve, grid: np.ndarray) -> np.ndarray:
    """Interpolate from the right-most point with ``fpr <= f``."""
    fpr, tpr = curve.fpr, curve.tpr
    idx = np.searchsorted(fpr, grid, side="right") - 1
    idx = np.clip(idx, 0, len(fpr) - 1)
    nxt = np.minimum(idx + 1, len(fpr) - 1)
    span = fpr[nxt] - fpr[idx]
    w = np.where(span > 0, (grid - fpr[idx]) / np.where(span > 0, span, 1.0), 0.0)
    return tpr[idx] + w * (tpr[nxt] - tpr[idx])


def vertical_average(curves: Sequence[RocCurve], grid_size: int = 1001) -> RocCurve:
    """Average tpr across curves at each fpr of a uniform grid."""
    if not curves:
        raise DomainError("Need at least one ROC curve to average")
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    grid = np.linspace(0.0, 1.0, grid_size)
    tpr = np.mean([_tpr_at(c, grid) for c in curves], axis=0)
    return RocCurve(grid, tpr)
