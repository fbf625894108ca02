"""Block-diagonal quadratic loss and amplifier records."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..model.base import ModelSpec
from ..model.errors import DomainError


class Layout(str, Enum):
    """How each block's parameter vector is laid out.

    ``centered`` and ``gaussian_full`` blocks act on column j of K;
    ``noncentered`` blocks act on ``(K[:, j], eta_j)``.
    """

    CENTERED = "centered"
    NONCENTERED = "noncentered"
    GAUSSIAN_FULL = "gaussian_full"


class AmplifierMode(str, Enum):
    NONE = "none"
    MULTIPLIER = "multiplier"
    EXPLICIT = "explicit"


class AmplifierScope(str, Enum):
    ALL_DIAGONAL = "all_diagonal"
    K_BLOCK_ONLY = "k_block_only"


@dataclass(frozen=True)
class AmplifierSpec:
    """Diagonal inflation applied to every block of the loss.

    Args:
        mode: ``none``, ``multiplier`` (scale diagonals by ``delta``) or
            ``explicit`` (add ``gamma`` entrywise to the diagonals)
        delta: Multiplier, at least 1
        gamma: Explicit amplifiers, shape ``(m, m)`` or ``(m, block side)``
        scope: Which diagonal entries are touched
    """

    mode: AmplifierMode = AmplifierMode.NONE
    delta: float = 1.0
    gamma: Optional[np.ndarray] = None
    scope: AmplifierScope = AmplifierScope.K_BLOCK_ONLY

    def __post_init__(self) -> None:
        if self.mode == AmplifierMode.MULTIPLIER and not self.delta >= 1:
            raise DomainError(f"Multiplier must be >= 1, got {self.delta}")
        if self.mode == AmplifierMode.EXPLICIT:
            if self.gamma is None:
                raise DomainError("Explicit amplifier requires gamma")
            if np.any(np.asarray(self.gamma) < 0):
                raise DomainError("Explicit amplifier entries must be non-negative")

    @classmethod
    def multiplier(
        cls, delta: float, scope: AmplifierScope = AmplifierScope.K_BLOCK_ONLY
    ) -> "AmplifierSpec":
        return cls(mode=AmplifierMode.MULTIPLIER, delta=float(delta), scope=scope)


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class QuadraticLoss:
    """``sum_j 0.5 psi_j' Gamma_j psi_j - g_j' psi_j`` over m independent blocks.

    ``gamma`` has shape ``(m, d, d)`` and ``g`` shape ``(m, d)`` with
    ``d = m`` for centered layouts and ``d = m + 1`` when eta is present.
    ``amplifier`` holds what was added to each block diagonal so the raw
    loss stays recoverable. Instances are immutable.
    """

    gamma: np.ndarray
    g: np.ndarray
    layout: Layout
    n: int
    spec: Optional[ModelSpec] = None
    hspec: str = ""
    amplifier: np.ndarray = field(default=None)  # type: ignore[assignment]
    delta: float = 1.0

    def __post_init__(self) -> None:
        gamma = _readonly(self.gamma)
        g = _readonly(self.g)
        if gamma.ndim != 3 or gamma.shape[1] != gamma.shape[2]:
            raise DomainError(f"Blocks must be square, got shape {gamma.shape}")
        m, d = gamma.shape[0], gamma.shape[1]
        expected = m + 1 if self.layout == Layout.NONCENTERED else m
        if d != expected:
            raise DomainError(
                f"{self.layout.value} layout needs block side {expected}, got {d}"
            )
        if g.shape != (m, d):
            raise DomainError(f"g must have shape {(m, d)}, got {g.shape}")
        amp = np.zeros((m, d)) if self.amplifier is None else self.amplifier
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "amplifier", _readonly(amp))

    @property
    def m(self) -> int:
        return int(self.gamma.shape[0])

    @property
    def side(self) -> int:
        return int(self.gamma.shape[1])

    @property
    def has_eta(self) -> bool:
        return self.layout == Layout.NONCENTERED

    @property
    def is_amplified(self) -> bool:
        return bool(np.any(self.amplifier != 0))

    def block(self, j: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.gamma[j], self.g[j]

    def raw(self) -> "QuadraticLoss":
        """The loss with the recorded amplifier removed."""
        if not self.is_amplified:
            return self
        idx = np.arange(self.side)
        gamma = np.array(self.gamma)
        gamma[:, idx, idx] -= self.amplifier
        return QuadraticLoss(
            gamma=gamma,
            g=self.g,
            layout=self.layout,
            n=self.n,
            spec=self.spec,
            hspec=self.hspec,
        )

    def pack(self, K: np.ndarray, eta: Optional[np.ndarray] = None) -> np.ndarray:
        """Stack parameters into per-block vectors, row j being block j."""
        K = np.asarray(K, dtype=float)
        if not self.has_eta:
            return K.T.copy()
        eta = np.zeros(self.m) if eta is None else np.asarray(eta, dtype=float)
        return np.hstack([K.T, eta.reshape(-1, 1)])

    def unpack(self, psi: np.ndarray) -> Tuple[np.ndarray, Optional[np.ndarray]]:
        K = psi[:, : self.m].T.copy()
        eta = psi[:, self.m].copy() if self.has_eta else None
        return K, eta

    def smooth_value(self, psi: np.ndarray) -> float:
        """Unpenalized objective at stacked parameters ``psi``."""
        quad = np.einsum("ji,jik,jk->", psi, self.gamma, psi)
        return float(0.5 * quad - np.sum(self.g * psi))

    def gradient(self, psi: np.ndarray) -> np.ndarray:
        return np.einsum("jik,jk->ji", self.gamma, psi) - self.g

    def describe(self) -> Dict[str, Any]:
        spec = self.spec.to_dict() if self.spec is not None else None
        return {
            "layout": self.layout.value,
            "n": self.n,
            "m": self.m,
            "spec": spec,
            "h": self.hspec,
            "delta": self.delta,
        }
