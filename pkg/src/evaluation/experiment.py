"""Simulation experiments: truth generation, per-trial pipeline and ROC averaging.

Each replicate samples data from a generated ``K0``, assembles and
optionally amplifies the loss, solves a warm-started path and scores edge
recovery. Replicates are independent and may run in worker processes.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..loss.amplify import amplify
from ..loss.assembly import HArg, assemble
from ..loss.base import AmplifierSpec, QuadraticLoss
from ..loss.profile import EtaRecovery, profile_out_eta
from ..model.base import Dataset, InteractionParams, ModelSpec, standardize
from ..model.copositivity import CopositivityConfig, VerdictStatus, check_normalizable
from ..model.errors import DomainError, GsmError, NormalizabilityError
from ..sampling.gibbs import GibbsConfig, sample_model
from ..sampling.graphs import GraphSpec, generate_k0, random_mean
from ..sampling.rng import trial_rng
from ..selection.ebic import select
from ..solver.base import EstimatePath, Pair, SolverConfig, edges_of
from ..solver.path import lambda_grid, lambda_max, solve_path
from .roc import RocCurve, auc, confusion, roc_from_path, vertical_average

logger = logging.getLogger(__name__)

MAX_TRUTH_ATTEMPTS = 10


@dataclass
class ExperimentSpec:
    """Everything needed to replay an experiment.

    ``mu``/``mu_sd`` give the truncated Gaussian a (constant or random) mean
    with ``eta0 = K0 mu0``; ``eta`` sets a constant ``eta0`` directly.
    ``mult`` is the amplifier multiplier (``None`` or 1 leaves the loss as
    assembled).
    """

    spec: ModelSpec
    m: int
    n: int
    graph: GraphSpec
    h: HArg
    mult: Optional[float] = None
    num_k0: int = 5
    trials: int = 10
    nlambda: int = 50
    lambda_min_ratio: float = 0.01
    seed: int = 0
    profile_eta: bool = False
    mu: Optional[float] = None
    mu_sd: Optional[float] = None
    eta: Optional[float] = None
    scale: bool = False
    ebic: bool = False
    solver: SolverConfig = field(default_factory=SolverConfig)
    gibbs: GibbsConfig = field(default_factory=GibbsConfig)
    copositivity: CopositivityConfig = field(default_factory=CopositivityConfig)

    def __post_init__(self) -> None:
        if self.num_k0 < 1 or self.trials < 1:
            raise DomainError("num_k0 and trials must be at least 1")
        if self.n < 1 or self.m < 2:
            raise DomainError(f"Need n >= 1 and m >= 2, got n={self.n}, m={self.m}")
        if self.spec.centered and (
            self.mu is not None or self.mu_sd is not None or self.eta is not None
        ):
            raise DomainError("Centered models take no mean or eta")
        if (self.mu is not None or self.mu_sd is not None) and not (
            self.spec.is_truncated_gaussian
        ):
            raise DomainError("A mean is only defined for the truncated Gaussian (a=b=1)")

    def to_dict(self) -> Dict[str, Any]:
        h = ",".join(map(str, self.h)) if isinstance(self.h, (list, tuple)) else self.h
        return {
            "model": self.spec.to_dict(),
            "m": self.m,
            "n": self.n,
            "graph": self.graph.to_dict(),
            "h": str(h),
            "mult": self.mult,
            "num_k0": self.num_k0,
            "trials": self.trials,
            "nlambda": self.nlambda,
            "lambda_min_ratio": self.lambda_min_ratio,
            "seed": self.seed,
            "profile_eta": self.profile_eta,
            "mu": self.mu,
            "mu_sd": self.mu_sd,
            "eta": self.eta,
            "scale": self.scale,
            "ebic": self.ebic,
            "solver": dict(vars(self.solver)),
            "gibbs": self.gibbs.to_dict(),
            "copositivity": dict(vars(self.copositivity)),
        }


@dataclass
class Truth:
    params: InteractionParams
    mu: Optional[np.ndarray] = None
    attempt: int = 0

    @property
    def support(self) -> List[Pair]:
        return edges_of(self.params.K)

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.params.K)[0])


def _truth_once(espec: ExperimentSpec, rng: np.random.Generator) -> Truth:
    params = generate_k0(espec.m, espec.graph, rng)
    mu0 = None
    if espec.mu_sd is not None:
        mu0 = random_mean(espec.m, espec.mu_sd, rng)
    elif espec.mu is not None:
        mu0 = np.full(espec.m, float(espec.mu))
    if mu0 is not None:
        params = InteractionParams(params.K, params.K @ mu0)
    elif espec.eta is not None:
        params = InteractionParams(params.K, np.full(espec.m, float(espec.eta)))
    return Truth(params, mu0)


def build_truth(espec: ExperimentSpec, k0_index: int) -> Truth:
    """Generate ``K0`` (and ``eta0``) for one truth index.

    Parameters the normalizability check refutes are redrawn from the next
    stream, up to ``MAX_TRUTH_ATTEMPTS`` times.

    Raises:
        NormalizabilityError: If every attempt was refuted
    """
    for attempt in range(MAX_TRUTH_ATTEMPTS):
        rng = trial_rng(espec.seed, k0_index, 0, attempt)
        truth = _truth_once(espec, rng)
        verdict = check_normalizable(espec.spec, truth.params, espec.copositivity)
        if verdict.status != VerdictStatus.VIOLATED:
            truth.attempt = attempt
            return truth
        logger.warning(
            f"Truth {k0_index} attempt {attempt} not normalizable "
            f"({verdict.condition}: {verdict.detail}); redrawing"
        )
    raise NormalizabilityError(
        f"No normalizable parameters after {MAX_TRUTH_ATTEMPTS} attempts"
    )


def build_loss(
    spec: ModelSpec, h: HArg, data: Dataset, mult: Optional[float]
) -> QuadraticLoss:
    loss = assemble(spec, h, data)
    if mult is not None and mult != 1.0:
        loss = amplify(loss, AmplifierSpec.multiplier(mult))
    return loss


def fit_path(
    loss: QuadraticLoss,
    cfg: SolverConfig,
    nlambda: int,
    lambda_min_ratio: float,
    profile_eta: bool,
) -> Tuple[QuadraticLoss, EstimatePath, Optional[EtaRecovery]]:
    """Solve the default grid; returns the loss actually solved, the path and
    the eta recovery when eta was profiled out."""
    recovery = None
    if profile_eta and loss.has_eta:
        loss, recovery = profile_out_eta(loss)
    lam_max = lambda_max(loss, cfg.lambda_ratio)
    grid = lambda_grid(lam_max, nlambda, lambda_min_ratio)
    return loss, solve_path(loss, grid, cfg, recovery), recovery


@dataclass
class TrialResult:
    k0_index: int
    trial: int
    auc: float = math.nan
    curve: Optional[RocCurve] = None
    ebic_point: Optional[Tuple[float, float]] = None
    converged: bool = True
    error: Optional[str] = None


def run_trial(
    espec: ExperimentSpec, k0_index: int, trial: int, truth: Truth
) -> TrialResult:
    """Sample, fit and score one replicate; library errors are captured."""
    result = TrialResult(k0_index, trial)
    rng = trial_rng(espec.seed, k0_index, trial + 1)
    try:
        data = sample_model(espec.spec, truth.params, espec.n, espec.gibbs, rng)
        if espec.scale:
            data = standardize(data)
        loss = build_loss(espec.spec, espec.h, data, espec.mult)
        solved, path, recovery = fit_path(
            loss, espec.solver, espec.nlambda, espec.lambda_min_ratio, espec.profile_eta
        )
        result.curve = roc_from_path(path, truth.support, espec.m)
        result.auc = auc(result.curve)
        result.converged = all(e.converged for e in path)
        if espec.ebic:
            best, _, _ = select(
                path, solved, espec.n, True, solved, espec.solver, recovery
            )
            tpr, fpr = confusion(path[best].edges, truth.support, espec.m)
            result.ebic_point = (tpr, fpr)
    except GsmError as e:
        result.error = f"{type(e).__name__}: {e}"
        logger.warning(f"Trial ({k0_index}, {trial}) failed: {result.error}")
    else:
        logger.info(f"Trial ({k0_index}, {trial}) finished with AUC {result.auc:.4f}")
    return result


@dataclass
class ExperimentResult:
    trials: List[TrialResult]
    curve: Optional[RocCurve]

    @property
    def succeeded(self) -> List[TrialResult]:
        return [t for t in self.trials if t.error is None]

    @property
    def aucs(self) -> List[float]:
        return [t.auc for t in self.succeeded]

    @property
    def failures(self) -> int:
        return len(self.trials) - len(self.succeeded)

    @property
    def mean_auc(self) -> float:
        return float(np.mean(self.aucs)) if self.aucs else math.nan

    @property
    def sd_auc(self) -> float:
        return float(np.std(self.aucs, ddof=1)) if len(self.aucs) > 1 else math.nan

    @property
    def ebic_point(self) -> Optional[Dict[str, float]]:
        points = [t.ebic_point for t in self.succeeded if t.ebic_point is not None]
        if not points:
            return None
        tpr, fpr = np.mean(points, axis=0)
        return {"tpr": float(tpr), "fpr": float(fpr)}

    def summary(self) -> Dict[str, Any]:
        return {
            "mean": self.mean_auc,
            "sd": self.sd_auc,
            "trials": len(self.trials),
            "failures": self.failures,
            "aucs": self.aucs,
            "ebic_point": self.ebic_point,
        }


def _run_truth(espec: ExperimentSpec, k0_index: int) -> List[TrialResult]:
    try:
        truth = build_truth(espec, k0_index)
    except GsmError as e:
        logger.warning(f"Truth {k0_index} failed: {e}")
        return [
            TrialResult(k0_index, t, error=f"{type(e).__name__}: {e}")
            for t in range(espec.trials)
        ]
    return [run_trial(espec, k0_index, t, truth) for t in range(espec.trials)]


def run_experiment(
    espec: ExperimentSpec, workers: int = 1, grid_size: int = 1001
) -> ExperimentResult:
    """Run ``num_k0 * trials`` replicates and average their ROC curves.

    Args:
        espec: Experiment description
        workers: Processes to spread truths over; 1 runs in-process
        grid_size: Resolution of the vertically averaged curve

    Returns:
        Per-trial results in ``(k0_index, trial)`` order and the averaged
        curve (``None`` when every trial failed)
    """
    indices = list(range(espec.num_k0))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_truth, [espec] * len(indices), indices))
    else:
        batches = [_run_truth(espec, k) for k in indices]
    trials = [t for batch in batches for t in batch]

    curves = [t.curve for t in trials if t.error is None and t.curve is not None]
    curve = vertical_average(curves, grid_size) if curves else None
    result = ExperimentResult(trials, curve)
    logger.info(
        f"Experiment finished: mean AUC {result.mean_auc:.4f} over "
        f"{len(result.aucs)} trials, {result.failures} failure(s)"
    )
    return result
