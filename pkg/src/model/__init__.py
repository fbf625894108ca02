"""Model definitions, densities, normalizability and the h-function menu."""

from .base import Dataset, InteractionParams, ModelSpec, standardize
from .copositivity import (
    CopositivityConfig,
    CopositivityResult,
    CopositivityStatus,
    NormalizabilityVerdict,
    VerdictStatus,
    check_normalizable,
    is_strictly_copositive,
)
from .density import log_density_unnorm, score_partials
from .errors import (
    DomainError,
    GsmError,
    NormalizabilityError,
    NumericError,
    QuadratureError,
    SamplerError,
    SingularSystemError,
)
from .hfunc import (
    H_REGISTRY,
    MCP,
    SCAD,
    Admissibility,
    Constant,
    HFunction,
    Log1pTrunc,
    TruncPower,
    get_h_functions,
    h_admissible,
    h_eval,
    parse_hspec,
    parse_hspec_list,
)

__all__ = [
    "Admissibility",
    "Constant",
    "CopositivityConfig",
    "CopositivityResult",
    "CopositivityStatus",
    "Dataset",
    "DomainError",
    "GsmError",
    "HFunction",
    "H_REGISTRY",
    "InteractionParams",
    "Log1pTrunc",
    "MCP",
    "ModelSpec",
    "NormalizabilityError",
    "NormalizabilityVerdict",
    "NumericError",
    "QuadratureError",
    "SCAD",
    "SamplerError",
    "SingularSystemError",
    "TruncPower",
    "VerdictStatus",
    "check_normalizable",
    "get_h_functions",
    "h_admissible",
    "h_eval",
    "is_strictly_copositive",
    "log_density_unnorm",
    "parse_hspec",
    "parse_hspec_list",
    "score_partials",
    "standardize",
]
