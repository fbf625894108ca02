"""Population constants of the support recovery theory, by Monte Carlo."""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List

import numpy as np

from ..loss.assembly import HArg, assemble
from ..model.base import InteractionParams, ModelSpec
from ..model.errors import DomainError, SingularSystemError
from ..sampling.gibbs import GibbsConfig, sample_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagnosticsReport:
    """Incoherence and scale constants of the population loss.

    ``alpha`` may be zero or negative, meaning irrepresentability fails.
    """

    alpha: float
    c_gamma0: float
    c_psi0: float
    d_psi0: int
    mc_samples: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _support_columns(spec: ModelSpec, params0: InteractionParams) -> List[np.ndarray]:
    """Per block, indices of nonzero parameters; the diagonal is always in."""
    m = params0.m
    support = []
    for j in range(m):
        rows = set(np.nonzero(params0.K[:, j])[0].tolist()) | {j}
        if not spec.centered and params0.eta[j] != 0:
            rows.add(m)
        support.append(np.array(sorted(rows)))
    return support


def population_diagnostics(
    spec: ModelSpec,
    params0: InteractionParams,
    h: HArg,
    mc_n: int,
    cfg: GibbsConfig,
    rng: np.random.Generator,
) -> DiagnosticsReport:
    """Estimate the population loss by assembling it on a large Gibbs draw.

    ``alpha = 1 - max_j ||Gamma0_{S^c S} Gamma0_{SS}^{-1}||`` and
    ``c_gamma0 = max_j ||Gamma0_{SS}^{-1}||``, both with the max-row-sum
    norm, where ``S`` is the support of column j of the true parameters.

    Raises:
        SingularSystemError: If some ``Gamma0_{SS}`` is singular
    """
    if mc_n < 2:
        raise DomainError(f"mc_n must be at least 2, got {mc_n}")
    data = sample_model(spec, params0, mc_n, cfg, rng)
    loss = assemble(spec, h, data)
    supports = _support_columns(spec, params0)

    worst_incoherence = 0.0
    c_gamma0 = 0.0
    for j, S in enumerate(supports):
        gamma_j = loss.gamma[j]
        Sc = np.setdiff1d(np.arange(loss.side), S)
        block = gamma_j[np.ix_(S, S)]
        try:
            inv = np.linalg.inv(block)
        except np.linalg.LinAlgError:
            raise SingularSystemError(
                f"Population block {j} is singular on its support", block=j
            )
        c_gamma0 = max(c_gamma0, float(np.max(np.sum(np.abs(inv), axis=1))))
        if Sc.size:
            cross = gamma_j[np.ix_(Sc, S)] @ inv
            worst_incoherence = max(
                worst_incoherence, float(np.max(np.sum(np.abs(cross), axis=1)))
            )

    psi0 = params0.K if spec.centered else np.vstack([params0.K, params0.eta])
    report = DiagnosticsReport(
        alpha=1.0 - worst_incoherence,
        c_gamma0=c_gamma0,
        c_psi0=float(np.max(np.sum(np.abs(psi0), axis=0))),
        d_psi0=int(np.max(np.count_nonzero(psi0, axis=0))),
        mc_samples=mc_n,
    )
    logger.info(
        f"Population diagnostics: alpha={report.alpha:.4f}, "
        f"c_gamma0={report.c_gamma0:.4g}"
    )
    return report
