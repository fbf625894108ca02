"""Tests for asymptotic variances, Cramer-Rao bounds and quadrature."""

import math

import numpy as np
import pytest
from scipy import stats

from src.model import DomainError, QuadratureError, parse_hspec
from src.sampling import sample_truncated_normal_uni
from src.univariate import (
    QuadratureConfig,
    TruncatedNormal,
    asymptotic_variance,
    cramer_rao,
    efficiency,
    estimate_mu,
)


class TestTruncatedNormal:
    @pytest.mark.parametrize("mu", [-3.0, 0.0, 2.0])
    def test_moments_match_scipy(self, mu):
        law = TruncatedNormal(mu, 1.5)
        ref = stats.truncnorm(-mu / 1.5, np.inf, loc=mu, scale=1.5)
        assert law.mean() == pytest.approx(ref.mean(), rel=1e-7)
        assert law.var(lambda x: x) == pytest.approx(ref.var(), rel=1e-6)
        assert law.expect(lambda x: np.ones_like(x)) == pytest.approx(1.0, abs=1e-9)

    def test_divergent_expectation_raises(self):
        law = TruncatedNormal(0.0, 1.0)
        with pytest.raises(QuadratureError, match="diverges"):
            law.expect(lambda x: np.exp(x ** 4), "E[exp(x^4)]")

    def test_bad_arguments(self):
        with pytest.raises(DomainError, match="sigma"):
            TruncatedNormal(0.0, 0.0)
        with pytest.raises(DomainError, match="tail_mass"):
            QuadratureConfig(tail_mass=1.0)


def test_half_normal_variance_bound():
    assert cramer_rao("sigma2", 1.0, 0.0) == pytest.approx(2.0, abs=1e-6)


def test_far_from_boundary_mean_is_efficient():
    h = parse_hspec("const:1")
    assert cramer_rao("mu", 20.0, 1.0) == pytest.approx(1.0, rel=1e-6)
    assert asymptotic_variance("mu", 20.0, 1.0, h) == pytest.approx(1.0, rel=1e-6)
    assert efficiency("mu", 20.0, 1.0, h) == pytest.approx(1.0, rel=1e-6)


def test_bounded_h_beats_square_far_from_boundary():
    square = asymptotic_variance("mu", 8.0, 1.0, parse_hspec("pow:2:inf"))
    for spec in ("pow:1:3", "log1p:1"):
        assert asymptotic_variance("mu", 8.0, 1.0, parse_hspec(spec)) < square


@pytest.mark.parametrize("spec", ["pow:1:3", "log1p:1", "log1p:2", "pow:2:inf"])
@pytest.mark.parametrize("mu0", [0.0, 0.5, 2.0, 8.0])
def test_efficiency_in_unit_interval(spec, mu0):
    value = efficiency("mu", mu0, 1.0, parse_hspec(spec))
    assert 0 < value <= 1.05


def test_known_variance_checked():
    with pytest.raises(DomainError, match="Known variance"):
        cramer_rao("mu", 1.0, 0.0)
    with pytest.raises(DomainError, match="True variance"):
        cramer_rao("sigma2", -1.0, 0.0)
    with pytest.raises(ValueError):
        cramer_rao("kappa", 1.0, 1.0)


@pytest.mark.parametrize("spec", ["pow:1:3", "log1p:1", "pow:2:inf"])
@pytest.mark.parametrize("mu0", [0.5, 2.0, 8.0])
def test_monte_carlo_variance_matches_asymptotic(spec, mu0):
    h = parse_hspec(spec)
    n, reps = 500, 2000
    rng = np.random.default_rng(int(mu0 * 10) + len(spec))
    samples = sample_truncated_normal_uni(mu0, 1.0, rng, size=(reps, n))
    estimates = np.array([estimate_mu(row, 1.0, h) for row in samples])
    mc = n * float(np.var(estimates, ddof=1))
    expected = asymptotic_variance("mu", mu0, 1.0, h)
    assert mc == pytest.approx(expected, rel=0.1)
    assert math.isfinite(mc)
