"""eBIC model choice along a penalty path."""

from .ebic import EbicScore, ebic, log_binomial, normalize_support, refit, select

__all__ = ["EbicScore", "ebic", "log_binomial", "normalize_support", "refit", "select"]
