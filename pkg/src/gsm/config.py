"""Configuration management for the gsm commands."""

import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from ..model.copositivity import CopositivityConfig
from ..model.errors import DomainError
from ..sampling.gibbs import GibbsConfig
from ..solver.base import SolverConfig
from ..univariate.quadrature import QuadratureConfig


class ConfigError(Exception):
    """Exception raised when a configuration file is invalid."""

    pass


@dataclass
class PathConfig:
    """Penalty grid settings."""

    nlambda: int = 50
    lambda_min_ratio: float = 0.01

    def __post_init__(self) -> None:
        if self.nlambda < 1:
            raise DomainError(f"nlambda must be at least 1, got {self.nlambda}")
        if not 0 < self.lambda_min_ratio < 1:
            raise DomainError(
                f"lambda_min_ratio must be in (0, 1), got {self.lambda_min_ratio}"
            )


@dataclass
class GsmConfig:
    """Every tunable knob, grouped by the component that reads it."""

    solver: SolverConfig = field(default_factory=SolverConfig)
    gibbs: GibbsConfig = field(default_factory=GibbsConfig)
    copositivity: CopositivityConfig = field(default_factory=CopositivityConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    path: PathConfig = field(default_factory=PathConfig)

    def to_dict(self) -> Dict[str, Any]:
        return {
            section.name: {
                f.name: getattr(getattr(self, section.name), f.name)
                for f in fields(getattr(self, section.name))
            }
            for section in fields(self)
        }


SECTIONS = {f.name: f for f in fields(GsmConfig)}


def _coerce(value: Any, default: Any, where: str) -> Any:
    """Check ``value`` against the type of the field's default."""
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        value = math.inf
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"{where} must be true or false, got {value!r}")
        return value
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where} must be an integer, got {value!r}")
        return value
    if isinstance(default, float) or default is None:
        if value is None and default is None:
            return None
        if isinstance(value, str):
            try:
                return float(value)
            except ValueError:
                raise ConfigError(f"{where} must be a number, got {value!r}")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{where} must be a number, got {value!r}")
        return float(value)
    return value


def _section(name: str, base: Any, values: Any, path: Path) -> Any:
    if values is None:
        return base
    if not isinstance(values, dict):
        raise ConfigError(f"Section '{name}' in {path} must be a mapping")
    known = {f.name: getattr(base, f.name) for f in fields(base)}
    updates = {}
    for key, value in values.items():
        if key not in known:
            raise ConfigError(
                f"Unknown key '{name}.{key}' in {path}. "
                f"Valid keys: {', '.join(sorted(known))}"
            )
        updates[key] = _coerce(value, known[key], f"{name}.{key} in {path}")
    try:
        return replace(base, **updates)
    except DomainError as e:
        raise ConfigError(f"Invalid value in section '{name}' of {path}: {e}")


def load_config(path: Optional[Union[str, Path]] = None) -> GsmConfig:
    """Load a YAML configuration; omitted sections and keys keep defaults.

    Raises:
        ConfigError: If the file is missing, is not valid YAML, or holds
            unknown sections, unknown keys or invalid values
    """
    config = GsmConfig()
    if path is None:
        return config
    path = Path(path)

    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {path}")
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {path}: {e}")

    if data is None:
        return config
    if not isinstance(data, dict):
        raise ConfigError(f"Top level of {path} must be a mapping of sections")

    for name, values in data.items():
        if name not in SECTIONS:
            raise ConfigError(
                f"Unknown section '{name}' in {path}. "
                f"Valid sections: {', '.join(SECTIONS)}"
            )
        config = replace(config, **{name: _section(name, getattr(config, name), values, path)})
    return config
