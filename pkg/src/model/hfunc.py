"""Weight functions h used by generalized score matching.

Every variant is a frozen dataclass with a vectorized ``values`` method
returning ``(h(x), h'(x))``. Variants are looked up by their text prefix in
``H_REGISTRY`` so CLI arguments and config files round-trip exactly, e.g.
``pow:1:3`` is ``min(x, 3)``.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Dict, List, Optional, Sequence, Tuple, Type

import numpy as np

from .base import ModelSpec
from .errors import DomainError

logger = logging.getLogger(__name__)


def _format_number(value: float) -> str:
    if math.isinf(value):
        return "inf"
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def _parse_number(text: str, field_name: str, spec_text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise DomainError(f"Invalid {field_name} '{text}' in h spec '{spec_text}'")


class HFunction(ABC):
    """Abstract base class for the closed menu of h functions."""

    prefix: ClassVar[str] = ""
    arity: ClassVar[int] = 0

    @abstractmethod
    def values(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Evaluate h and h' elementwise on ``x >= 0``.

        At kinks the derivative of the left piece is returned. At zero the
        right limit is used.

        Args:
            x: Array of non-negative points

        Returns:
            Tuple ``(h, dh)`` of arrays shaped like ``x``
        """
        pass

    @property
    @abstractmethod
    def origin_power(self) -> float:
        """Exponent r with h(x) of exact order x^r as x -> 0+."""
        pass

    @abstractmethod
    def spec_string(self) -> str:
        pass

    @classmethod
    @abstractmethod
    def from_args(cls, args: Sequence[str], spec_text: str) -> "HFunction":
        pass

    def __str__(self) -> str:
        return self.spec_string()


@dataclass(frozen=True)
class TruncPower(HFunction):
    """``min(x^p, c)``; ``c`` may be infinite."""

    p: float
    c: float = math.inf

    prefix: ClassVar[str] = "pow"
    arity: ClassVar[int] = 2

    def __post_init__(self) -> None:
        if not self.p >= 0 or math.isinf(self.p):
            raise DomainError(f"pow: power must be finite and >= 0, got {self.p}")
        if not self.c > 0:
            raise DomainError(f"pow: truncation must be positive, got {self.c}")

    def values(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        xp = np.power(x, self.p)
        h = np.minimum(xp, self.c)
        if self.p == 0:
            return h, np.zeros_like(x)
        with np.errstate(divide="ignore"):
            slope = self.p * np.power(x, self.p - 1.0)
        dh = np.where(xp <= self.c, slope, 0.0)
        return h, dh

    @property
    def origin_power(self) -> float:
        return self.p

    def spec_string(self) -> str:
        return f"pow:{_format_number(self.p)}:{_format_number(self.c)}"

    @classmethod
    def from_args(cls, args: Sequence[str], spec_text: str) -> "HFunction":
        return cls(
            p=_parse_number(args[0], "power", spec_text),
            c=_parse_number(args[1], "truncation", spec_text),
        )


@dataclass(frozen=True)
class Log1pTrunc(HFunction):
    """``min(log(1 + x), c)``."""

    c: float = math.inf

    prefix: ClassVar[str] = "log1p"
    arity: ClassVar[int] = 1

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise DomainError(f"log1p: truncation must be positive, got {self.c}")

    def values(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        lx = np.log1p(x)
        return np.minimum(lx, self.c), np.where(lx <= self.c, 1.0 / (1.0 + x), 0.0)

    @property
    def origin_power(self) -> float:
        return 1.0

    def spec_string(self) -> str:
        return f"log1p:{_format_number(self.c)}"

    @classmethod
    def from_args(cls, args: Sequence[str], spec_text: str) -> "HFunction":
        return cls(c=_parse_number(args[0], "truncation", spec_text))


@dataclass(frozen=True)
class MCP(HFunction):
    """Minimax concave penalty shape: ``lam*x - x^2/(2*gam)`` up to ``gam*lam``."""

    lam: float
    gam: float

    prefix: ClassVar[str] = "mcp"
    arity: ClassVar[int] = 2

    def __post_init__(self) -> None:
        if not (self.lam > 0 and self.gam > 0) or math.isinf(self.lam * self.gam):
            raise DomainError("mcp: lam and gam must be finite and positive")

    def values(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        knot = self.gam * self.lam
        inside = x <= knot
        plateau = 0.5 * self.gam * self.lam ** 2
        h = np.where(inside, self.lam * x - x ** 2 / (2 * self.gam), plateau)
        dh = np.where(inside, self.lam - x / self.gam, 0.0)
        return h, dh

    @property
    def origin_power(self) -> float:
        return 1.0

    def spec_string(self) -> str:
        return f"mcp:{_format_number(self.lam)}:{_format_number(self.gam)}"

    @classmethod
    def from_args(cls, args: Sequence[str], spec_text: str) -> "HFunction":
        return cls(
            lam=_parse_number(args[0], "lam", spec_text),
            gam=_parse_number(args[1], "gam", spec_text),
        )


@dataclass(frozen=True)
class SCAD(HFunction):
    """Smoothly clipped absolute deviation shape with knots ``lam`` and ``gam*lam``."""

    lam: float
    gam: float

    prefix: ClassVar[str] = "scad"
    arity: ClassVar[int] = 2

    def __post_init__(self) -> None:
        if not self.lam > 0 or math.isinf(self.lam):
            raise DomainError(f"scad: lam must be finite and positive, got {self.lam}")
        if not self.gam > 2 or math.isinf(self.gam):
            raise DomainError(f"scad: gam must be finite and > 2, got {self.gam}")

    def values(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        lam, gam = self.lam, self.gam
        first = x <= lam
        middle = (x > lam) & (x <= gam * lam)
        h = np.where(
            first,
            lam * x,
            np.where(
                middle,
                (2 * gam * lam * x - x ** 2 - lam ** 2) / (2 * (gam - 1)),
                lam ** 2 * (gam + 1) / 2,
            ),
        )
        dh = np.where(first, lam, np.where(middle, (gam * lam - x) / (gam - 1), 0.0))
        return h, dh

    @property
    def origin_power(self) -> float:
        return 1.0

    def spec_string(self) -> str:
        return f"scad:{_format_number(self.lam)}:{_format_number(self.gam)}"

    @classmethod
    def from_args(cls, args: Sequence[str], spec_text: str) -> "HFunction":
        return cls(
            lam=_parse_number(args[0], "lam", spec_text),
            gam=_parse_number(args[1], "gam", spec_text),
        )


@dataclass(frozen=True)
class Constant(HFunction):
    """``h(x) = v``; recovers the original (untruncated) score matching weight."""

    v: float = 1.0

    prefix: ClassVar[str] = "const"
    arity: ClassVar[int] = 1

    def __post_init__(self) -> None:
        if not self.v > 0 or math.isinf(self.v):
            raise DomainError(f"const: value must be finite and positive, got {self.v}")

    def values(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        return np.full_like(x, self.v), np.zeros_like(x)

    @property
    def origin_power(self) -> float:
        return 0.0

    def spec_string(self) -> str:
        return f"const:{_format_number(self.v)}"

    @classmethod
    def from_args(cls, args: Sequence[str], spec_text: str) -> "HFunction":
        return cls(v=_parse_number(args[0], "value", spec_text))


# Registry of available h functions keyed by text prefix
H_REGISTRY: Dict[str, Type[HFunction]] = {
    "pow": TruncPower,
    "log1p": Log1pTrunc,
    "mcp": MCP,
    "scad": SCAD,
    "const": Constant,
}


def get_h_functions() -> Dict[str, Type[HFunction]]:
    """Get the registry of all available h functions.

    Returns:
        Dictionary mapping text prefixes to h function classes
    """
    return H_REGISTRY.copy()


def parse_hspec(text: str) -> HFunction:
    """Parse an h spec such as ``pow:1:3``, ``log1p:inf`` or ``scad:1:3.7``.

    Raises:
        DomainError: If the prefix is unknown or the arguments are invalid
    """
    parts = [part.strip() for part in text.strip().split(":")]
    prefix = parts[0].lower()
    if prefix not in H_REGISTRY:
        available = ", ".join(H_REGISTRY)
        raise DomainError(f"Unknown h function '{prefix}'. Available: {available}")
    cls = H_REGISTRY[prefix]
    args = parts[1:]
    if len(args) != cls.arity:
        raise DomainError(
            f"h function '{prefix}' takes {cls.arity} argument(s), got '{text}'"
        )
    return cls.from_args(args, text)


def parse_hspec_list(text: str) -> List[HFunction]:
    """Parse a comma-separated list of h specs."""
    return [parse_hspec(item) for item in text.split(",") if item.strip()]


def h_eval(h: HFunction, x: float) -> Tuple[float, float]:
    """Evaluate ``(h(x), h'(x))`` at a single positive point.

    Example:
        >>> h_eval(parse_hspec("mcp:1:10"), 12.0)
        (5.0, 0.0)
    """
    if not x > 0:
        raise DomainError(f"h is evaluated at positive points only, got {x}")
    value, slope = h.values(np.array([x]))
    return float(value[0]), float(slope[0])


@dataclass(frozen=True)
class Admissibility:
    """Outcome of the admissibility check; ``clause`` names the failure."""

    admissible: bool
    clause: Optional[str] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.admissible


def required_origin_order(spec: ModelSpec, eta_min: Optional[float] = None) -> float:
    """Order q such that h(x) = o(x^q) as x -> 0 is required."""
    if spec.centered:
        return 1.0 - spec.a
    if spec.b > 0:
        return max(1.0 - spec.a, 1.0 - spec.b)
    if eta_min is None:
        return 2.0
    return 1.0 - eta_min


def h_admissible(
    h: HFunction, spec: ModelSpec, eta_min: Optional[float] = None
) -> Admissibility:
    """Check whether ``h`` keeps the integration-by-parts argument valid.

    The menu functions are positive on (0, inf) and bounded by piecewise
    powers by construction, so only the behaviour at the origin can fail.

    Args:
        h: Weight function
        spec: Model the loss is built for
        eta_min: Smallest entry of eta when known (used only for b == 0)

    Returns:
        Admissibility verdict naming the failed clause
    """
    probe = np.array([1e-3, 1.0, 1e3])
    values, _ = h.values(probe)
    if np.any(values <= 0):
        return Admissibility(False, "positivity", f"{h} is not positive on (0, inf)")

    q = required_origin_order(spec, eta_min)
    if not h.origin_power > q:
        return Admissibility(
            False,
            "origin",
            f"{h} behaves like x^{_format_number(h.origin_power)} at 0 but "
            f"o(x^{q:g}) is required",
        )
    return Admissibility(True)
