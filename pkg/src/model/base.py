"""Core data types for pairwise interaction power models."""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ModelSpec:
    """Exponents and centering flag selecting a pairwise interaction power model.

    The density on the non-negative orthant is proportional to
    ``exp(-(1/2a) x^a' K x^a + eta' (x^b - 1) / b)`` with ``log x`` replacing
    ``(x^b - 1) / b`` when ``b == 0``. ``centered`` fixes ``eta`` to zero.
    """

    a: float
    b: float
    centered: bool = False

    def __post_init__(self) -> None:
        if not np.isfinite(self.a) or self.a <= 0:
            raise DomainError(f"Exponent a must be positive, got {self.a}")
        if not np.isfinite(self.b) or self.b < 0:
            raise DomainError(f"Exponent b must be non-negative, got {self.b}")

    @classmethod
    def parse(cls, text: str, centered: bool = False) -> "ModelSpec":
        """Build a spec from ``"<a>:<b>"`` text such as ``"0.5:0"``."""
        parts = text.split(":")
        if len(parts) != 2:
            raise DomainError(f"Model must be given as <a>:<b>, got '{text}'")
        try:
            a, b = float(parts[0]), float(parts[1])
        except ValueError:
            raise DomainError(f"Model exponents must be numbers, got '{text}'")
        return cls(a=a, b=b, centered=centered)

    @property
    def is_truncated_gaussian(self) -> bool:
        return self.a == 1.0 and self.b == 1.0

    @property
    def log_eta_term(self) -> bool:
        """True when the eta term uses the ``log x`` convention."""
        return self.b == 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {"a": self.a, "b": self.b, "centered": self.centered}


@dataclass
class InteractionParams:
    """Interaction matrix ``K`` and linear parameter ``eta``.

    ``eta`` defaults to the zero vector, which is also how centered models
    are represented.
    """

    K: np.ndarray
    eta: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        self.K = np.array(self.K, dtype=float)
        if self.K.ndim != 2 or self.K.shape[0] != self.K.shape[1]:
            raise DomainError(f"K must be a square matrix, got shape {self.K.shape}")
        if self.eta is None:
            self.eta = np.zeros(self.K.shape[0])
        else:
            self.eta = np.array(self.eta, dtype=float).reshape(-1)
        if self.eta.shape[0] != self.K.shape[0]:
            raise DomainError(
                f"eta has length {self.eta.shape[0]} but K has side {self.K.shape[0]}"
            )

    @property
    def m(self) -> int:
        return int(self.K.shape[0])

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.K, self.K.T))

    def to_dict(self) -> Dict[str, Any]:
        return {"K": self.K.tolist(), "eta": self.eta.tolist()}


@dataclass
class Dataset:
    """An ``n x m`` sample together with the column scale applied to it.

    Args:
        x: Data matrix, one row per observation
        scale: Column divisors already applied to ``x`` (all ones when the
            data are in original units)
        support: ``"nonnegative"`` for orthant data, ``"real"`` for the
            Gaussian full-support loss
    """

    x: np.ndarray
    scale: np.ndarray = field(default=None)  # type: ignore[assignment]
    support: str = "nonnegative"

    def __post_init__(self) -> None:
        self.x = np.array(self.x, dtype=float)
        if self.x.ndim == 1:
            self.x = self.x.reshape(1, -1)
        if self.x.ndim != 2 or self.x.shape[0] < 1 or self.x.shape[1] < 1:
            raise DomainError(f"Data must be a non-empty matrix, got shape {self.x.shape}")
        if not np.all(np.isfinite(self.x)):
            row, col = np.argwhere(~np.isfinite(self.x))[0]
            raise DomainError(f"Non-finite value at row {row + 1}, column {col + 1}")
        if self.support not in ("nonnegative", "real"):
            raise DomainError(f"Unknown support '{self.support}'")
        if self.support == "nonnegative" and np.any(self.x < 0):
            row, col = np.argwhere(self.x < 0)[0]
            raise DomainError(
                f"Negative value {self.x[row, col]} at row {row + 1}, column {col + 1}"
            )
        if self.scale is None:
            self.scale = np.ones(self.x.shape[1])
        else:
            self.scale = np.array(self.scale, dtype=float).reshape(-1)
        if self.scale.shape[0] != self.x.shape[1] or np.any(self.scale <= 0):
            raise DomainError("Scale must hold one positive entry per column")

    @property
    def n(self) -> int:
        return int(self.x.shape[0])

    @property
    def m(self) -> int:
        return int(self.x.shape[1])

    def require_positive(self, reason: str) -> None:
        """Raise DomainError naming the first zero cell.

        Args:
            reason: Why strictly positive data are needed, echoed in the message
        """
        zeros = np.argwhere(self.x <= 0)
        if zeros.size:
            row, col = zeros[0]
            raise DomainError(
                f"Zero value at row {row + 1}, column {col + 1}: {reason}"
            )


def standardize(data: Dataset) -> Dataset:
    """Divide every column by its l2 norm and record the divisors.

    Raises:
        DomainError: If a column is identically zero
    """
    norms = np.sqrt(np.sum(data.x ** 2, axis=0))
    if np.any(norms == 0):
        col = int(np.argmax(norms == 0))
        raise DomainError(f"Column {col + 1} is identically zero and cannot be scaled")
    return Dataset(x=data.x / norms, scale=data.scale * norms, support=data.support)
