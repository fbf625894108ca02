"""Extended BIC over a penalty path, with optional support-restricted refits."""

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Set, Tuple

import numpy as np
import scipy.linalg
from scipy.special import gammaln

from ..loss.base import QuadraticLoss
from ..loss.profile import EtaRecovery
from ..model.errors import DomainError, SingularSystemError
from ..solver.base import Estimate, EstimatePath, Pair, SolverConfig

logger = logging.getLogger(__name__)

# score = SIGN * n * (psi' Gamma psi - 2 g' psi) + penalty, minimized
QUADRATIC_SIGN = 1.0


@dataclass(frozen=True)
class EbicScore:
    """One scored estimate; ``estimate`` is what was scored (the refit when
    ``refitted``)."""

    lam: float
    score: float
    support_size: int
    refitted: bool
    estimate: Optional[Estimate] = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "ebic": self.score,
            "support_size": self.support_size,
            "refitted": self.refitted,
        }


def log_binomial(total: int, k: int) -> float:
    return float(gammaln(total + 1) - gammaln(k + 1) - gammaln(total - k + 1))


def normalize_support(support: Iterable[Pair]) -> Set[Pair]:
    """Unordered off-diagonal pairs ``(i, j)`` with ``i < j``."""
    return {(min(i, j), max(i, j)) for i, j in support if i != j}


def _score_value(raw_loss: QuadraticLoss, est: Estimate, n: int) -> float:
    loss = raw_loss.raw()
    psi = loss.pack(est.K, est.eta)
    quad = float(np.einsum("ji,jik,jk->", psi, loss.gamma, psi))
    lin = float(np.sum(loss.g * psi))
    total = est.m * (est.m - 1) // 2
    s = len(est.edges)
    penalty = s * math.log(n) + 2 * log_binomial(total, s)
    return QUADRATIC_SIGN * n * (quad - 2 * lin) + penalty


def ebic(
    raw_loss: QuadraticLoss,
    est: Estimate,
    n: int,
    refit: bool = False,
    refit_loss: Optional[QuadraticLoss] = None,
    cfg: Optional[SolverConfig] = None,
    eta_recovery: Optional[EtaRecovery] = None,
) -> EbicScore:
    """Score an estimate on the unamplified loss.

    ``2n`` times the loss plus ``|S| log n + 2 log C(m(m-1)/2, |S|)`` where
    ``S`` is the set of upper-triangle off-diagonal edges.

    Args:
        raw_loss: Loss the score is computed on (its amplifier is ignored)
        est: Estimate to score
        n: Sample size
        refit: Score the unpenalized refit on ``est``'s support instead; a
            singular restricted system falls back to ``est`` itself
        refit_loss: Loss used for refitting, ``raw_loss`` when omitted
        cfg: Solver settings used by the refit
        eta_recovery: Rebuilds eta on refits of a profiled loss
    """
    if est.m != raw_loss.m:
        raise DomainError(f"Estimate has {est.m} variables but the loss has {raw_loss.m}")
    target = est
    refitted = False
    if refit:
        try:
            target = _refit(refit_loss or raw_loss, est.edges, cfg, lam=est.lam)
            if eta_recovery is not None:
                target.eta = eta_recovery.recover(target.K)
            refitted = True
        except SingularSystemError as e:
            logger.warning(
                f"Refit at lambda={est.lam:.4g} failed ({e}); scoring as fitted"
            )
    return EbicScore(
        lam=est.lam,
        score=_score_value(raw_loss, target, n),
        support_size=len(target.edges),
        refitted=refitted,
        estimate=target,
    )


def _block_variables(
    m: int, j: int, has_eta: bool, index: dict
) -> Tuple[List[int], List[int]]:
    """Entries of block ``j`` that are free and the variables they map to."""
    entries, variables = [], []
    for i in range(m):
        key = ("d", j) if i == j else ("k", min(i, j), max(i, j))
        if key in index:
            entries.append(i)
            variables.append(index[key])
    if has_eta:
        entries.append(m)
        variables.append(index[("e", j)])
    return entries, variables


def refit(
    loss: QuadraticLoss,
    support: Iterable[Pair],
    cfg: Optional[SolverConfig] = None,
    lam: float = 0.0,
) -> Estimate:
    """Unpenalized minimizer over the support, the diagonal and eta.

    Symmetric mode solves one joint system in which each off-diagonal pair
    is a single variable; otherwise each block is solved on its own.

    Raises:
        SingularSystemError: If the restricted system is not positive definite
    """
    cfg = cfg or SolverConfig()
    m = loss.m
    edges = normalize_support(support)
    if any(j >= m or i < 0 for i, j in edges):
        raise DomainError(f"Support refers to variables outside 0..{m - 1}")

    if not cfg.symmetric:
        psi = np.zeros((m, loss.side))
        for j in range(m):
            free = [
                i for i in range(m) if i == j or (min(i, j), max(i, j)) in edges
            ]
            if loss.has_eta:
                free.append(m)
            gamma_j, g_j = loss.block(j)
            try:
                factor = scipy.linalg.cho_factor(gamma_j[np.ix_(free, free)])
            except np.linalg.LinAlgError:
                raise SingularSystemError(
                    f"Restricted block {j} is singular; amplify the loss", block=j
                )
            psi[j, free] = scipy.linalg.cho_solve(factor, g_j[free])
        K, eta = loss.unpack(psi)
        return Estimate(K=K, eta=eta, lam=lam, loss_value=loss.smooth_value(psi))

    keys: List[tuple] = [("d", j) for j in range(m)]
    keys += [("k", i, j) for i, j in sorted(edges)]
    if loss.has_eta:
        keys += [("e", j) for j in range(m)]
    index = {key: v for v, key in enumerate(keys)}
    Q = np.zeros((len(keys), len(keys)))
    c = np.zeros(len(keys))
    for j in range(m):
        entries, variables = _block_variables(m, j, loss.has_eta, index)
        gamma_j, g_j = loss.block(j)
        Q[np.ix_(variables, variables)] += gamma_j[np.ix_(entries, entries)]
        c[variables] += g_j[entries]
    try:
        factor = scipy.linalg.cho_factor(Q)
    except np.linalg.LinAlgError:
        raise SingularSystemError(
            f"Restricted system on {len(edges)} edges is singular; amplify the loss"
        )
    theta = scipy.linalg.cho_solve(factor, c)

    K = np.zeros((m, m))
    eta = np.zeros(m) if loss.has_eta else None
    for key, value in zip(keys, theta):
        if key[0] == "d":
            K[key[1], key[1]] = value
        elif key[0] == "k":
            K[key[1], key[2]] = K[key[2], key[1]] = value
        else:
            eta[key[1]] = value
    return Estimate(
        K=K, eta=eta, lam=lam, loss_value=loss.smooth_value(loss.pack(K, eta))
    )


# ``ebic`` takes a ``refit`` flag that shadows the function name
_refit = refit


def select(
    path: EstimatePath,
    raw_loss: QuadraticLoss,
    n: int,
    refit_support: bool = True,
    refit_loss: Optional[QuadraticLoss] = None,
    cfg: Optional[SolverConfig] = None,
    eta_recovery: Optional[EtaRecovery] = None,
) -> Tuple[int, List[EbicScore], List[Estimate]]:
    """Score every path entry and pick the smallest eBIC.

    Args:
        path: Estimates to score
        raw_loss: Loss the scores are computed on (its amplifier is ignored)
        n: Sample size
        refit_support: Refit each entry on its support before scoring
        refit_loss: Loss used for refitting, ``raw_loss`` when omitted
        cfg: Solver settings used by the refit
        eta_recovery: Rebuilds eta on refits of a profiled loss

    Returns:
        The chosen index (ties go to the larger penalty, unconverged entries
        only when nothing converged), the scores and the scored estimates
    """
    if len(path) == 0:
        raise DomainError("Cannot select from an empty path")
    scores = [
        ebic(raw_loss, est, n, refit_support, refit_loss, cfg, eta_recovery)
        for est in path
    ]
    scored = [s.estimate for s in scores]

    values = np.array([s.score for s in scores])
    converged = np.array([e.converged for e in path])
    if converged.any() and not converged.all():
        values = np.where(converged, values, np.inf)
    best = int(np.argmin(values))
    logger.info(
        f"eBIC selected lambda={scores[best].lam:.4g} with "
        f"{scores[best].support_size} edges"
    )
    return best, scores, scored
