"""Ground-truth interaction matrices on random graphs."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Dict, Tuple

import networkx as nx
import numpy as np

from ..model.base import InteractionParams
from ..model.errors import DomainError

logger = logging.getLogger(__name__)


class GraphScheme(str, Enum):
    BLOCK = "block"
    ERDOS_RENYI = "erdos_renyi"


def _parse_number(text: str, kind: Callable[[str], Any], spec_text: str) -> Any:
    try:
        return kind(text)
    except ValueError:
        raise DomainError(f"Graph parameters must be numbers, got '{spec_text}'")


@dataclass(frozen=True)
class GraphSpec:
    """How the support and entries of ``K0`` are drawn.

    Args:
        scheme: ``block`` (disconnected equal blocks) or ``erdos_renyi``
        pi: Edge probability
        num_blocks: Number of blocks for the block scheme
        weight_range: Range of the uniform edge weights
        min_eigenvalue: Smallest eigenvalue of the returned matrix
    """

    scheme: GraphScheme = GraphScheme.BLOCK
    pi: float = 0.2
    num_blocks: int = 10
    weight_range: Tuple[float, float] = (0.5, 1.0)
    min_eigenvalue: float = 0.1

    def __post_init__(self) -> None:
        if not 0 < self.pi <= 1:
            raise DomainError(f"Edge probability must be in (0, 1], got {self.pi}")
        if not self.min_eigenvalue > 0:
            raise DomainError("min_eigenvalue must be positive")
        if self.num_blocks < 1:
            raise DomainError("num_blocks must be at least 1")
        lo, hi = self.weight_range
        if not 0 <= lo <= hi:
            raise DomainError(f"Bad weight range {self.weight_range}")

    @classmethod
    def parse(cls, text: str, **kwargs: Any) -> "GraphSpec":
        """Build a spec from ``block:<pi>:<blocks>`` or ``er:<pi>`` text."""
        parts = [part.strip() for part in text.strip().split(":")]
        scheme = parts[0].lower()
        if scheme == "block" and len(parts) == 3:
            kwargs["num_blocks"] = _parse_number(parts[2], int, text)
            return cls(GraphScheme.BLOCK, _parse_number(parts[1], float, text), **kwargs)
        if scheme in ("er", "erdos_renyi") and len(parts) == 2:
            return cls(GraphScheme.ERDOS_RENYI, _parse_number(parts[1], float, text), **kwargs)
        raise DomainError(
            f"Graph must be given as block:<pi>:<blocks> or er:<pi>, got '{text}'"
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scheme": self.scheme.value,
            "pi": self.pi,
            "num_blocks": self.num_blocks,
            "weight_range": list(self.weight_range),
            "min_eigenvalue": self.min_eigenvalue,
        }


def _fill(size: int, gs: GraphSpec, rng: np.random.Generator) -> np.ndarray:
    graph = nx.gnp_random_graph(size, gs.pi, seed=int(rng.integers(2**32)))
    adj = nx.to_numpy_array(graph, nodelist=range(size))
    lo, hi = gs.weight_range
    weights = np.tril(rng.uniform(lo, hi, size=(size, size)), k=-1)
    lower = np.tril(adj, k=-1) * weights
    return lower + lower.T


def generate_k0(m: int, gs: GraphSpec, rng: np.random.Generator) -> InteractionParams:
    """Symmetric ``K0`` with a common diagonal giving ``min_eigenvalue``.

    The off-diagonal part is drawn first and the diagonal is the exact
    shift ``d = min_eigenvalue - lambda_min(offdiag)``.

    Raises:
        DomainError: If ``m < 2`` or the blocks do not divide ``m``
    """
    if m < 2:
        raise DomainError(f"Need at least two variables, got {m}")
    offdiag = np.zeros((m, m))
    if gs.scheme == GraphScheme.BLOCK:
        if m % gs.num_blocks:
            raise DomainError(f"{gs.num_blocks} blocks do not divide m={m}")
        size = m // gs.num_blocks
        for start in range(0, m, size):
            stop = start + size
            offdiag[start:stop, start:stop] = _fill(size, gs, rng)
    else:
        offdiag = _fill(m, gs, rng)

    lam_min = float(np.linalg.eigvalsh(offdiag)[0])
    K = offdiag + (gs.min_eigenvalue - lam_min) * np.eye(m)
    logger.info(
        f"Generated K0 ({gs.scheme.value}, m={m}, pi={gs.pi}) with "
        f"{int(np.count_nonzero(np.triu(offdiag, 1)))} edges"
    )
    return InteractionParams(K=K)


def random_mean(m: int, sd: float, rng: np.random.Generator) -> np.ndarray:
    """Means drawn i.i.d. from ``N(0, sd^2)``."""
    if sd < 0:
        raise DomainError(f"Mean standard deviation must be non-negative, got {sd}")
    return rng.normal(0.0, sd, size=m)
