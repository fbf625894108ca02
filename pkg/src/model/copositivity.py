"""Strict co-positivity tests and the normalizability verdict."""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Optional

import numpy as np

from .base import InteractionParams, ModelSpec
from .errors import DomainError

logger = logging.getLogger(__name__)


@dataclass
class CopositivityConfig:
    """Knobs for the refutation search over the unit simplex."""

    pd_tol: float = 1e-12
    grid_points: int = 20
    random_points: int = 2000
    max_grid_points: int = 200000
    refine_steps: int = 200
    seed: int = 0

    def __post_init__(self) -> None:
        if self.grid_points < 1:
            raise DomainError("grid_points must be at least 1")
        if self.pd_tol < 0:
            raise DomainError("pd_tol must be non-negative")


class CopositivityStatus(str, Enum):
    PROVEN_YES = "proven_yes"
    PROVEN_NO = "proven_no"
    UNKNOWN = "unknown"


@dataclass
class CopositivityResult:
    """Tri-state outcome; ``witness`` is set only for ``PROVEN_NO``."""

    status: CopositivityStatus
    witness: Optional[np.ndarray] = None
    value: Optional[float] = None
    method: str = ""


def _project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the unit simplex (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.shape[0] + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def _grid_candidates(m: int, resolution: int) -> np.ndarray:
    """All simplex points with coordinates in multiples of 1/resolution."""
    rows = []
    for bars in itertools.combinations(range(resolution + m - 1), m - 1):
        edges = np.array((-1,) + bars + (resolution + m - 1,))
        rows.append(np.diff(edges) - 1)
    return np.array(rows, dtype=float) / resolution


def _edge_candidates(sym: np.ndarray) -> np.ndarray:
    """Exact minimizer of the form on every edge of the simplex."""
    m = sym.shape[0]
    i, j = np.triu_indices(m, k=1)
    sii, sjj, sij = sym[i, i], sym[j, j], sym[i, j]
    curvature = sii + sjj - 2 * sij
    with np.errstate(divide="ignore", invalid="ignore"):
        vertex = np.where(sii < sjj, 1.0, 0.0)
        t = np.where(curvature > 0, (sjj - sij) / curvature, vertex)
    t = np.clip(t, 0.0, 1.0)
    points = np.zeros((i.shape[0], m))
    points[np.arange(i.shape[0]), i] = t
    points[np.arange(i.shape[0]), j] = 1.0 - t
    return points


def _refine(sym: np.ndarray, start: np.ndarray, steps: int) -> np.ndarray:
    """Projected gradient descent of ``v' S v`` over the simplex."""
    step = 1.0 / (2.0 * max(np.linalg.norm(sym, 2), 1e-300))
    v = start.copy()
    best, best_val = v, float(v @ sym @ v)
    for _ in range(steps):
        v = _project_simplex(v - step * 2.0 * (sym @ v))
        val = float(v @ sym @ v)
        if val < best_val:
            best, best_val = v, val
    return best


def is_strictly_copositive(
    K: np.ndarray, cfg: Optional[CopositivityConfig] = None
) -> CopositivityResult:
    """Prove or refute ``v'Kv > 0`` for all non-negative ``v != 0``.

    The decision problem is co-NP-hard, so this is a sufficient test
    (positive definite symmetric part, or non-negative entries with a
    positive diagonal) combined with a refutation search on the simplex.

    Args:
        K: Square matrix
        cfg: Search settings

    Returns:
        CopositivityResult; ``UNKNOWN`` when neither proof nor witness is found

    Raises:
        DomainError: If K is not square
    """
    cfg = cfg or CopositivityConfig()
    K = np.asarray(K, dtype=float)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise DomainError(f"K must be square, got shape {K.shape}")
    m = K.shape[0]
    sym = 0.5 * (K + K.T)

    if np.linalg.eigvalsh(sym)[0] > cfg.pd_tol:
        return CopositivityResult(CopositivityStatus.PROVEN_YES, method="positive_definite")
    diag = np.diag(sym)
    if np.all(sym >= 0) and np.all(diag > 0):
        return CopositivityResult(CopositivityStatus.PROVEN_YES, method="nonnegative")
    if np.any(diag <= 0):
        j = int(np.argmin(diag))
        witness = np.zeros(m)
        witness[j] = 1.0
        return CopositivityResult(
            CopositivityStatus.PROVEN_NO, witness, float(K[j, j]), method="vertex"
        )

    if comb(cfg.grid_points + m - 1, m - 1) <= cfg.max_grid_points:
        candidates = _grid_candidates(m, cfg.grid_points)
        method = "grid"
    else:
        rng = np.random.default_rng(cfg.seed)
        candidates = np.vstack(
            [_edge_candidates(sym), rng.dirichlet(np.ones(m), size=cfg.random_points)]
        )
        method = "sampled"
    values = np.einsum("ij,jk,ik->i", candidates, sym, candidates)
    start = candidates[int(np.argmin(values))]
    v = _refine(sym, start, cfg.refine_steps)
    v = np.maximum(v, 0.0)
    v = v / v.sum()
    value = float(v @ K @ v)
    if value <= 0:
        logger.info(f"Co-positivity refuted by {method} search, v'Kv = {value:.3g}")
        return CopositivityResult(CopositivityStatus.PROVEN_NO, v, value, method=method)
    return CopositivityResult(CopositivityStatus.UNKNOWN, value=value, method=method)


class VerdictStatus(str, Enum):
    OK = "ok"
    VIOLATED = "violated"
    UNKNOWN = "unknown"


@dataclass
class NormalizabilityVerdict:
    status: VerdictStatus
    condition: Optional[str] = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == VerdictStatus.OK


def check_normalizable(
    spec: ModelSpec,
    params: InteractionParams,
    copos_cfg: Optional[CopositivityConfig] = None,
) -> NormalizabilityVerdict:
    """Apply the sufficient conditions CC1 to CC3 for integrability.

    CC1 is strict co-positivity of K. CC2 is ``2a > b > 0``. CC3 is
    ``b == 0`` with every ``eta_j > -1``. Centered models need CC1 only.

    Returns:
        ``ok``, ``violated`` naming the first failed condition, or ``unknown``
        when co-positivity could be neither proven nor refuted
    """
    cop = is_strictly_copositive(params.K, copos_cfg)
    if cop.status == CopositivityStatus.PROVEN_NO:
        return NormalizabilityVerdict(
            VerdictStatus.VIOLATED, "CC1", f"v'Kv = {cop.value:.3g} <= 0 on the simplex"
        )

    if not spec.centered:
        if spec.b > 0 and not 2 * spec.a > spec.b:
            return NormalizabilityVerdict(
                VerdictStatus.VIOLATED, "CC2", f"2a = {2 * spec.a} is not above b = {spec.b}"
            )
        if spec.b == 0 and np.any(params.eta <= -1):
            j = int(np.argmin(params.eta))
            return NormalizabilityVerdict(
                VerdictStatus.VIOLATED,
                "CC3",
                f"eta[{j}] = {params.eta[j]} is not above -1",
            )

    if cop.status == CopositivityStatus.PROVEN_YES:
        return NormalizabilityVerdict(VerdictStatus.OK)
    return NormalizabilityVerdict(
        VerdictStatus.UNKNOWN, "CC1", "co-positivity neither proven nor refuted"
    )
