"""Sample score matching loss evaluated directly from log-density partials."""

import numpy as np

from ..model.base import Dataset, InteractionParams, ModelSpec
from ..model.density import score_partials
from .assembly import HArg, check_domain, expand_h, h_matrix


def direct_sample_loss(
    spec: ModelSpec, h: HArg, data: Dataset, params: InteractionParams
) -> float:
    """Average of ``h' d_j log p + h (d_jj log p + (d_j log p)^2 / 2)``.

    Differs from the quadratic form of the assembled loss only by a
    constant, which makes it an independent check on the assembly algebra.
    """
    check_domain(spec, data)
    hs = expand_h(h, data.m)
    H, dH = h_matrix(hs, data.x)
    d1, d2 = score_partials(spec, params, data.x)
    terms = dH * d1 + H * (d2 + 0.5 * d1 ** 2)
    return float(np.sum(terms) / data.n)
