"""Ground-truth generation and samplers for orthant-supported models."""

from .gibbs import GibbsConfig, sample_model, sample_pairwise_gibbs, sample_tn_gibbs
from .graphs import GraphScheme, GraphSpec, generate_k0, random_mean
from .rng import trial_rng
from .truncnorm import sample_truncated_normal_uni

__all__ = [
    "GibbsConfig",
    "GraphScheme",
    "GraphSpec",
    "generate_k0",
    "random_mean",
    "sample_model",
    "sample_pairwise_gibbs",
    "sample_tn_gibbs",
    "sample_truncated_normal_uni",
    "trial_rng",
]
