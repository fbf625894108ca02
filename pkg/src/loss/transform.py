"""Map estimates fitted on column-scaled data back to original units."""

from dataclasses import replace
from typing import TYPE_CHECKING

import numpy as np

from ..model.base import ModelSpec
from ..model.errors import DomainError

if TYPE_CHECKING:
    from ..solver.base import Estimate


def back_transform_estimate(
    est: "Estimate", scale: np.ndarray, spec: ModelSpec
) -> "Estimate":
    """Undo the column scaling ``y = x / s`` applied before estimation.

    ``K[i, j]`` is divided by ``(s_i s_j)^a`` and ``eta_j`` by ``s_j^b``;
    with ``b == 0`` eta is unchanged since the log term only shifts the
    normalizing constant. The support is unchanged.
    """
    scale = np.asarray(scale, dtype=float).reshape(-1)
    if scale.shape[0] != est.K.shape[0] or np.any(scale <= 0):
        raise DomainError("Scale must hold one positive entry per variable")
    sa = np.power(scale, spec.a)
    K = est.K / np.outer(sa, sa)
    eta = est.eta
    if eta is not None and spec.b > 0:
        eta = eta / np.power(scale, spec.b)
    return replace(est, K=K, eta=eta)
