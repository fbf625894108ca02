"""Assembly of the score matching quadratic loss from data.

Each block is ``Gamma_j = y_j' y_j / n`` for an ``n x d`` factor ``y_j``, so
the cost is ``O(n m^3)`` overall and only ``m`` blocks of side ``m`` or
``m + 1`` are ever stored.
"""

import logging
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..model.base import Dataset, ModelSpec
from ..model.errors import DomainError
from ..model.hfunc import HFunction, h_admissible
from .base import Layout, QuadraticLoss

logger = logging.getLogger(__name__)

HArg = Union[HFunction, Sequence[HFunction]]


def expand_h(h: HArg, m: int) -> List[HFunction]:
    """Broadcast a single h to all coordinates or validate a per-coordinate list."""
    if isinstance(h, HFunction):
        return [h] * m
    hs = list(h)
    if len(hs) != m:
        raise DomainError(f"Expected {m} h functions, got {len(hs)}")
    return hs


def h_label(hs: Sequence[HFunction]) -> str:
    labels = [h.spec_string() for h in hs]
    if len(set(labels)) == 1:
        return labels[0]
    return ",".join(labels)


def h_matrix(hs: Sequence[HFunction], x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Evaluate ``h_j`` and ``h_j'`` on column j of ``x``."""
    if len(set(hs)) == 1:
        return hs[0].values(x)
    H = np.empty_like(x)
    dH = np.empty_like(x)
    for j, h in enumerate(hs):
        H[:, j], dH[:, j] = h.values(x[:, j])
    return H, dH


def negative_exponents(spec: ModelSpec) -> List[float]:
    """Exponents of x that appear with nonzero coefficients and are negative."""
    a, b = spec.a, spec.b
    exps = [a - 1.0, 2 * a - 2.0]
    if a != 1.0:
        exps.append(a - 2.0)
    if not spec.centered:
        exps += [b - 1.0, 2 * b - 2.0, a + b - 2.0]
        if b != 1.0:
            exps.append(b - 2.0)
    return [e for e in exps if e < 0]


def check_domain(spec: ModelSpec, data: Dataset) -> None:
    """Reject zero entries whenever a negative power of x is needed."""
    if data.support != "nonnegative":
        raise DomainError("Pairwise power models need non-negative data")
    negative = negative_exponents(spec)
    if negative:
        data.require_positive(
            f"a={spec.a:g}, b={spec.b:g} uses negative power {min(negative):g}"
        )


def _warn_inadmissible(hs: Sequence[HFunction], spec: ModelSpec) -> None:
    for h in set(hs):
        verdict = h_admissible(h, spec)
        if not verdict:
            logger.warning(f"h function {h} is not admissible: {verdict.reason}")


def assemble_pairwise(spec: ModelSpec, h: HArg, data: Dataset) -> QuadraticLoss:
    """Build ``(Gamma, g)`` for a pairwise interaction power model.

    Args:
        spec: Model exponents and centering
        h: One h for every coordinate or a list of m functions
        data: Non-negative sample

    Returns:
        Un-amplified QuadraticLoss in centered or noncentered layout

    Raises:
        DomainError: If a zero entry meets a negative exponent
    """
    n, m = data.n, data.m
    hs = expand_h(h, m)
    check_domain(spec, data)
    _warn_inadmissible(hs, spec)

    a, b = spec.a, spec.b
    x = data.x
    H, dH = h_matrix(hs, x)
    xa = np.power(x, a)
    w11 = H * np.power(x, 2 * a - 2.0)

    gamma11 = np.empty((m, m, m))
    for j in range(m):
        gamma11[j] = (xa * w11[:, j : j + 1]).T @ xa / n

    coef = dH * np.power(x, a - 1.0)
    if a != 1.0:
        coef = coef + (a - 1.0) * H * np.power(x, a - 2.0)
    g1 = (xa.T @ coef / n).T
    g1[np.arange(m), np.arange(m)] += a * np.mean(w11, axis=0)

    layout = Layout.CENTERED if spec.centered else Layout.NONCENTERED
    if spec.centered:
        gamma, g = gamma11, g1
    else:
        w12 = H * np.power(x, a + b - 2.0)
        gamma12 = -(xa.T @ w12 / n).T
        gamma22 = np.mean(H * np.power(x, 2 * b - 2.0), axis=0)
        g2 = -dH * np.power(x, b - 1.0)
        if b != 1.0:
            g2 = g2 - (b - 1.0) * H * np.power(x, b - 2.0)
        g2 = np.mean(g2, axis=0)

        gamma = np.empty((m, m + 1, m + 1))
        gamma[:, :m, :m] = gamma11
        gamma[:, :m, m] = gamma12
        gamma[:, m, :m] = gamma12
        gamma[:, m, m] = gamma22
        g = np.hstack([g1, g2.reshape(-1, 1)])

    logger.info(f"Assembled {layout.value} loss for a={a:g}, b={b:g}: n={n}, m={m}")
    return QuadraticLoss(gamma=gamma, g=g, layout=layout, n=n, spec=spec, hspec=h_label(hs))


def assemble_truncated_gaussian(
    h: HArg, data: Dataset, centered: bool
) -> QuadraticLoss:
    """Build the loss of the truncated Gaussian model (``a = b = 1``).

    No negative powers occur, so zero entries are allowed.
    """
    n, m = data.n, data.m
    hs = expand_h(h, m)
    spec = ModelSpec(a=1.0, b=1.0, centered=centered)
    _warn_inadmissible(hs, spec)
    x = data.x
    H, dH = h_matrix(hs, x)

    gamma11 = np.empty((m, m, m))
    for j in range(m):
        gamma11[j] = (x * H[:, j : j + 1]).T @ x / n
    g1 = (x.T @ dH / n).T
    g1[np.arange(m), np.arange(m)] += np.mean(H, axis=0)

    if centered:
        return QuadraticLoss(
            gamma=gamma11, g=g1, layout=Layout.CENTERED, n=n, spec=spec, hspec=h_label(hs)
        )

    gamma = np.empty((m, m + 1, m + 1))
    gamma[:, :m, :m] = gamma11
    cross = -(x.T @ H / n).T
    gamma[:, :m, m] = cross
    gamma[:, m, :m] = cross
    gamma[:, m, m] = np.mean(H, axis=0)
    g = np.hstack([g1, -np.mean(dH, axis=0).reshape(-1, 1)])
    return QuadraticLoss(
        gamma=gamma, g=g, layout=Layout.NONCENTERED, n=n, spec=spec, hspec=h_label(hs)
    )


def assemble_gaussian_full_support(data: Dataset) -> QuadraticLoss:
    """Score matching loss of a centered Gaussian on all of R^m.

    Every block is the second-moment matrix and ``g_j = e_j``, so the
    unpenalized minimizer is the inverse sample second moment.
    """
    n, m = data.n, data.m
    second = data.x.T @ data.x / n
    gamma = np.broadcast_to(second, (m, m, m))
    return QuadraticLoss(
        gamma=gamma, g=np.eye(m), layout=Layout.GAUSSIAN_FULL, n=n, hspec="const:1"
    )


def assemble(spec: ModelSpec, h: HArg, data: Dataset) -> QuadraticLoss:
    """Dispatch to the truncated Gaussian path when ``a == b == 1``."""
    if spec.is_truncated_gaussian:
        return assemble_truncated_gaussian(h, data, centered=spec.centered)
    return assemble_pairwise(spec, h, data)
