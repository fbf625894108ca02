"""Tests for the unnormalized log-density and its partials."""

import numpy as np
import pytest

from src.model import DomainError, InteractionParams, ModelSpec
from src.model.density import log_density_unnorm, score_partials


def _symmetric_params(m, rng, with_eta=True):
    A = rng.uniform(-0.3, 0.3, size=(m, m))
    K = A + A.T + 2.0 * np.eye(m)
    eta = rng.uniform(-0.5, 0.5, size=m) if with_eta else None
    return InteractionParams(K, eta)


def test_identity_example():
    spec = ModelSpec(a=1.0, b=1.0)
    assert log_density_unnorm(spec, InteractionParams(np.eye(2)), np.ones(2)) == -1.0


def test_eta_term_uses_power_convention():
    spec = ModelSpec(a=1.0, b=2.0)
    params = InteractionParams(np.zeros((1, 1)), np.array([3.0]))
    # eta * (x^b - 1) / b = 3 * (4 - 1) / 2
    assert log_density_unnorm(spec, params, np.array([2.0])) == pytest.approx(4.5)


def test_log_convention_rejects_zero():
    spec = ModelSpec(a=0.5, b=0.0)
    params = InteractionParams(np.eye(2), np.array([0.5, 0.5]))
    with pytest.raises(DomainError, match="Coordinate 2 is zero"):
        log_density_unnorm(spec, params, np.array([1.0, 0.0]))


def test_centered_ignores_eta_and_zero():
    spec = ModelSpec(a=0.5, b=0.0, centered=True)
    params = InteractionParams(np.eye(2), np.array([0.5, 0.5]))
    assert log_density_unnorm(spec, params, np.array([1.0, 0.0])) == pytest.approx(-1.0)


def test_negative_point_rejected():
    spec = ModelSpec(a=1.0, b=1.0)
    with pytest.raises(DomainError, match="non-negative"):
        log_density_unnorm(spec, InteractionParams(np.eye(2)), np.array([1.0, -1.0]))


def test_dimension_mismatch():
    spec = ModelSpec(a=1.0, b=1.0)
    with pytest.raises(DomainError, match="length 3"):
        log_density_unnorm(spec, InteractionParams(np.eye(2)), np.ones(3))


@pytest.mark.parametrize("a,b", [(1.0, 1.0), (0.5, 0.5), (0.5, 0.0), (1.5, 0.5)])
def test_partials_match_finite_differences(a, b):
    rng = np.random.default_rng(11)
    spec = ModelSpec(a=a, b=b)
    params = _symmetric_params(3, rng)
    x = rng.uniform(0.5, 2.0, size=(4, 3))
    d1, d2 = score_partials(spec, params, x)

    step1, step2 = 1e-6, 1e-4
    for i in range(x.shape[0]):
        for j in range(3):
            e = np.zeros(3)
            e[j] = 1.0
            f = lambda t: log_density_unnorm(spec, params, x[i] + t * e)  # noqa: E731
            first = (f(step1) - f(-step1)) / (2 * step1)
            second = (f(step2) - 2 * f(0.0) + f(-step2)) / step2 ** 2
            assert d1[i, j] == pytest.approx(first, rel=1e-5, abs=1e-6)
            assert d2[i, j] == pytest.approx(second, rel=1e-4, abs=1e-4)
