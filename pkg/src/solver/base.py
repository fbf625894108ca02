"""Solver configuration and estimate containers."""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Tuple

import numpy as np

from ..model.errors import DomainError

Pair = Tuple[int, int]


@dataclass
class SolverConfig:
    """Settings for coordinate descent.

    Args:
        tol: Stop when the largest coordinate change in a sweep is below this
        max_iter: Maximum number of full sweeps
        symmetric: Pair ``K[i, j]`` and ``K[j, i]`` into one variable
        lambda_ratio: ``lambda_eta / lambda_K``; ``inf`` pins eta at zero and
            ``0`` leaves eta unpenalized
        penalize_diagonal: Apply the l1 penalty to ``K[j, j]`` as well
        check_monotone: Assert after every update that the objective did not
            increase (slow, meant for tests)
    """

    tol: float = 1e-8
    max_iter: int = 10000
    symmetric: bool = True
    lambda_ratio: float = 1.0
    penalize_diagonal: bool = True
    check_monotone: bool = False

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be at least 1, got {self.max_iter}")
        if not self.lambda_ratio >= 0:
            raise DomainError(f"lambda_ratio must be in [0, inf], got {self.lambda_ratio}")

    def lambda_eta(self, lambda_k: float) -> float:
        if math.isinf(self.lambda_ratio):
            return math.inf
        return self.lambda_ratio * lambda_k


def soft_threshold(z: float, lam: float) -> float:
    """``sign(z) * max(|z| - lam, 0)``."""
    if lam < 0:
        raise DomainError(f"Threshold must be non-negative, got {lam}")
    if z > lam:
        return z - lam
    if z < -lam:
        return z + lam
    return 0.0


def support_of(K: np.ndarray) -> FrozenSet[Pair]:
    rows, cols = np.nonzero(K)
    return frozenset(zip(rows.tolist(), cols.tolist()))


def edges_of(K: np.ndarray) -> List[Pair]:
    """Upper-triangle off-diagonal pairs ``(i, j)``, ``i < j``, with a nonzero
    entry in either ``K[i, j]`` or ``K[j, i]``."""
    nz = (K != 0) | (K.T != 0)
    rows, cols = np.nonzero(np.triu(nz, k=1))
    return list(zip(rows.tolist(), cols.tolist()))


@dataclass
class Estimate:
    """Fitted parameters at one penalty level."""

    K: np.ndarray
    eta: Optional[np.ndarray] = None
    lam: float = 0.0
    iterations: int = 0
    converged: bool = True
    loss_value: float = math.nan
    asymmetry: float = 0.0
    support: FrozenSet[Pair] = field(init=False)

    def __post_init__(self) -> None:
        self.K = np.asarray(self.K, dtype=float)
        if self.eta is not None:
            self.eta = np.asarray(self.eta, dtype=float)
        self.support = support_of(self.K)

    @property
    def m(self) -> int:
        return int(self.K.shape[0])

    @property
    def edges(self) -> List[Pair]:
        return edges_of(self.K)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda": self.lam,
            "K": self.K.tolist(),
            "eta": None if self.eta is None else self.eta.tolist(),
            "support": [list(edge) for edge in self.edges],
            "iterations": self.iterations,
            "converged": self.converged,
            "loss_value": self.loss_value,
        }


@dataclass
class EstimatePath:
    """Estimates along a strictly decreasing penalty grid."""

    entries: List[Estimate]

    def __post_init__(self) -> None:
        lams = [e.lam for e in self.entries]
        if any(b >= a for a, b in zip(lams, lams[1:])):
            raise DomainError("Path penalties must be strictly decreasing")

    @property
    def lambdas(self) -> List[float]:
        return [e.lam for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> Estimate:
        return self.entries[index]

    def __iter__(self) -> Iterator[Estimate]:
        return iter(self.entries)
