"""Systematic-scan Gibbs samplers for orthant-supported pairwise models.

Both samplers advance ``cfg.chains`` independent chains in lock step and
interleave their kept states, so row ``k`` of the output comes from chain
``k % chains``.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..model.base import Dataset, InteractionParams, ModelSpec
from ..model.copositivity import VerdictStatus, check_normalizable
from ..model.errors import DomainError, NormalizabilityError, SamplerError
from .truncnorm import sample_truncated_normal_uni

logger = logging.getLogger(__name__)

T_MIN = -700.0
COARSE_POINTS = 257
BISECT_STEPS = 40


@dataclass
class GibbsConfig:
    """Chain settings.

    Args:
        burn_in: Sweeps discarded before the first kept state
        thin: Keep every ``thin``-th sweep after burn-in
        grid_points: Grid size for numeric inverse-CDF conditionals
        domain_cap: Fixed upper end of the conditional grids; ``None``
            searches for the point ``cap_nats`` below the conditional peak
        seed: Seed recorded for reproducibility (callers build the generator)
        chains: Chains advanced together
        cap_nats: Log-density drop that bounds the conditional grids
    """

    burn_in: int = 1000
    thin: int = 10
    grid_points: int = 2048
    domain_cap: Optional[float] = None
    seed: int = 0
    chains: int = 1
    cap_nats: float = 40.0

    def __post_init__(self) -> None:
        if self.burn_in < 0:
            raise DomainError(f"burn_in must be non-negative, got {self.burn_in}")
        if self.thin < 1:
            raise DomainError(f"thin must be at least 1, got {self.thin}")
        if self.grid_points < 64:
            raise DomainError(f"grid_points must be at least 64, got {self.grid_points}")
        if self.chains < 1:
            raise DomainError(f"chains must be at least 1, got {self.chains}")
        if self.domain_cap is not None and not self.domain_cap > 0:
            raise DomainError("domain_cap must be positive")
        if not self.cap_nats > 0:
            raise DomainError("cap_nats must be positive")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "burn_in": self.burn_in,
            "thin": self.thin,
            "grid_points": self.grid_points,
            "domain_cap": self.domain_cap,
            "seed": self.seed,
            "chains": self.chains,
            "cap_nats": self.cap_nats,
        }


def _initial_state(init: Optional[np.ndarray], chains: int, m: int) -> np.ndarray:
    if init is None:
        return np.ones((chains, m))
    state = np.array(np.broadcast_to(np.asarray(init, dtype=float), (chains, m)))
    if np.any(state < 0):
        raise DomainError("Initial Gibbs state must be non-negative")
    return state


def _run_chains(
    update: Callable[[np.ndarray, int], None],
    state: np.ndarray,
    n: int,
    cfg: GibbsConfig,
) -> np.ndarray:
    chains, m = state.shape
    kept_sweeps = math.ceil(n / chains)
    out = np.empty((kept_sweeps * chains, m))
    total = cfg.burn_in + cfg.thin * kept_sweeps
    kept = 0
    for sweep in range(1, total + 1):
        for j in range(m):
            update(state, j)
        if sweep > cfg.burn_in and (sweep - cfg.burn_in) % cfg.thin == 0:
            out[kept * chains : (kept + 1) * chains] = state
            kept += 1
    return out[:n]


def _require_positive_diagonal(K: np.ndarray) -> None:
    diag = np.diag(K)
    if np.any(~(diag > 0)):
        j = int(np.argmin(diag))
        raise DomainError(
            f"Diagonal entry K[{j}, {j}] = {diag[j]} must be positive for Gibbs sampling"
        )


def sample_tn_gibbs(
    params: InteractionParams,
    n: int,
    cfg: GibbsConfig,
    rng: np.random.Generator,
    init: Optional[np.ndarray] = None,
) -> Dataset:
    """Draw ``n`` rows from the truncated normal with density
    ``exp(-x'Kx/2 + eta'x)`` on the orthant.

    The mean is ``K^{-1} eta``; pass ``eta = K mu`` for a mean ``mu``.
    """
    if n < 1:
        raise DomainError(f"Sample size must be positive, got {n}")
    K, eta = params.K, params.eta
    _require_positive_diagonal(K)
    sd = 1.0 / np.sqrt(np.diag(K))
    state = _initial_state(init, cfg.chains, params.m)

    def update(x: np.ndarray, j: int) -> None:
        others = x @ K[:, j] - K[j, j] * x[:, j]
        mean = (eta[j] - others) / K[j, j]
        x[:, j] = sample_truncated_normal_uni(mean, sd[j], rng)

    x = _run_chains(update, state, n, cfg)
    logger.info(f"Truncated normal Gibbs produced {n} rows over {cfg.chains} chain(s)")
    return Dataset(x=x)


class _Conditional:
    """Log-density of ``t = log x_j`` given the other coordinates.

    ``f(t) = -k x^{2a}/(2a) - s x^a/a + eta (x^b - 1)/b + t`` with
    ``eta log x`` replacing the eta term when ``b == 0``.
    """

    def __init__(self, spec: ModelSpec, kjj: float, eta_j: float) -> None:
        self.a = spec.a
        self.b = spec.b
        self.kjj = kjj
        self.eta_j = eta_j
        self.t_max = min(700.0, 300.0 / spec.a)

    def __call__(self, t: np.ndarray, s: np.ndarray) -> np.ndarray:
        a, b = self.a, self.b
        with np.errstate(over="ignore", invalid="ignore"):
            xa = np.exp(a * t)
            value = -self.kjj * xa * xa / (2 * a) - s * xa / a + t
            if self.eta_j != 0.0:
                if b == 0.0:
                    value = value + self.eta_j * t
                else:
                    value = value + self.eta_j * np.expm1(b * t) / b
        return np.where(np.isnan(value), -np.inf, value)


def _bracket(
    f: _Conditional, s: np.ndarray, cap_nats: float, fixed_hi: Optional[float]
) -> Tuple[np.ndarray, np.ndarray]:
    """Per-chain ``(t_lo, t_hi)`` outside of which the density is ``cap_nats``
    below its coarse-grid peak."""
    chains = s.shape[0]
    t_lo = np.full(chains, -8.0)
    t_hi = np.full(chains, 2.0 if fixed_hi is None else math.log(fixed_hi))
    step_lo = np.full(chains, 8.0)
    step_hi = np.full(chains, 1.0)
    frac = np.linspace(0.0, 1.0, COARSE_POINTS)

    for _ in range(200):
        t = t_lo[:, None] + (t_hi - t_lo)[:, None] * frac
        values = f(t, s[:, None])
        peak = values.max(axis=1)
        level = peak - cap_nats
        grow_lo = (values[:, 0] > level) & (t_lo > T_MIN)
        grow_hi = (values[:, -1] > level) & (t_hi < f.t_max)
        if fixed_hi is not None:
            grow_hi[:] = False
        if not (grow_lo.any() or grow_hi.any()):
            break
        t_lo = np.where(grow_lo, np.maximum(t_lo - step_lo, T_MIN), t_lo)
        step_lo = np.where(grow_lo, 2 * step_lo, step_lo)
        t_hi = np.where(grow_hi, np.minimum(t_hi + step_hi, f.t_max), t_hi)
        step_hi = np.where(grow_hi, 2 * step_hi, step_hi)

    if not np.all(np.isfinite(peak)):
        return t_lo, t_hi

    # shrink each end to the crossing between the outermost coarse point
    # above the level and its neighbour
    above = values > level[:, None]
    first = np.argmax(above, axis=1)
    last = COARSE_POINTS - 1 - np.argmax(above[:, ::-1], axis=1)
    spacing = (t_hi - t_lo) / (COARSE_POINTS - 1)

    inside = t_lo + last * spacing
    outside = np.minimum(inside + spacing, t_hi)
    if fixed_hi is None:
        for _ in range(BISECT_STEPS):
            mid = 0.5 * (inside + outside)
            up = f(mid, s) > level
            inside = np.where(up, mid, inside)
            outside = np.where(up, outside, mid)
        new_hi = outside
    else:
        new_hi = t_hi

    inside = t_lo + first * spacing
    outside = np.maximum(inside - spacing, t_lo)
    for _ in range(BISECT_STEPS):
        mid = 0.5 * (inside + outside)
        up = f(mid, s) > level
        inside = np.where(up, mid, inside)
        outside = np.where(up, outside, mid)
    new_lo = outside
    return new_lo, new_hi


def _draw_from_grid(
    t: np.ndarray, logq: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Inverse-CDF draws, one per row, from densities tabulated on rows of ``t``."""
    q = np.exp(logq - logq.max(axis=1, keepdims=True))
    cdf = cumulative_trapezoid(q, t, axis=1, initial=0.0)
    target = rng.random(t.shape[0]) * cdf[:, -1]
    idx = np.minimum(np.sum(cdf < target[:, None], axis=1), t.shape[1] - 1)
    idx = np.maximum(idx, 1)
    rows = np.arange(t.shape[0])
    c0, c1 = cdf[rows, idx - 1], cdf[rows, idx]
    width = np.where(c1 > c0, c1 - c0, 1.0)
    w = np.clip((target - c0) / width, 0.0, 1.0)
    return t[rows, idx - 1] + w * (t[rows, idx] - t[rows, idx - 1])


def sample_pairwise_gibbs(
    spec: ModelSpec,
    params: InteractionParams,
    n: int,
    cfg: GibbsConfig,
    rng: np.random.Generator,
    init: Optional[np.ndarray] = None,
) -> Dataset:
    """Draw ``n`` rows from a general ``(a, b)`` pairwise interaction model.

    Each conditional is tabulated on a ``cfg.grid_points`` grid uniform in
    ``log x`` and inverted with linear interpolation of the trapezoid CDF.
    Mass below the lowest grid point is ignored.

    Raises:
        NormalizabilityError: If the parameters provably violate the
            normalizability conditions
        SamplerError: If a conditional has no finite mass on its grid
    """
    if n < 1:
        raise DomainError(f"Sample size must be positive, got {n}")
    verdict = check_normalizable(spec, params)
    if verdict.status == VerdictStatus.VIOLATED:
        raise NormalizabilityError(
            f"Parameters are not normalizable ({verdict.condition}: {verdict.detail})"
        )
    K = params.K
    eta = params.eta if not spec.centered else np.zeros(params.m)
    _require_positive_diagonal(K)
    conditionals = [_Conditional(spec, float(K[j, j]), float(eta[j])) for j in range(params.m)]
    frac = np.linspace(0.0, 1.0, cfg.grid_points)
    state = _initial_state(init, cfg.chains, params.m)

    def update(x: np.ndarray, j: int) -> None:
        xa = np.power(x, spec.a)
        s = xa @ K[:, j] - K[j, j] * xa[:, j]
        f = conditionals[j]
        t_lo, t_hi = _bracket(f, s, cfg.cap_nats, cfg.domain_cap)
        t = t_lo[:, None] + (t_hi - t_lo)[:, None] * frac
        logq = f(t, s[:, None])
        if not np.all(np.isfinite(logq.max(axis=1))):
            raise SamplerError(
                f"Conditional of coordinate {j} has no finite mass on its grid"
            )
        x[:, j] = np.exp(_draw_from_grid(t, logq, rng))

    x = _run_chains(update, state, n, cfg)
    logger.info(
        f"Pairwise Gibbs (a={spec.a}, b={spec.b}) produced {n} rows "
        f"over {cfg.chains} chain(s)"
    )
    return Dataset(x=x)


def sample_model(
    spec: ModelSpec,
    params: InteractionParams,
    n: int,
    cfg: GibbsConfig,
    rng: np.random.Generator,
) -> Dataset:
    """Use the exact truncated normal conditionals when ``a == b == 1``."""
    if spec.is_truncated_gaussian:
        eta = np.zeros(params.m) if spec.centered else params.eta
        return sample_tn_gibbs(InteractionParams(params.K, eta), n, cfg, rng)
    return sample_pairwise_gibbs(spec, params, n, cfg, rng)
