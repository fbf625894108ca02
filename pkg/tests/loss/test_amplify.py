"""Tests for diagonal amplification and the multiplier bounds."""

import math

import numpy as np
import pytest

from src.loss import (
    AmplifierScope,
    AmplifierSpec,
    amplify,
    assemble,
    multiplier_upper_bound,
)
from src.loss.base import AmplifierMode
from src.model import Dataset, DomainError, ModelSpec, parse_hspec


def test_reference_multipliers():
    assert multiplier_upper_bound(80, 100) == pytest.approx(1.8647, abs=5e-5)
    assert multiplier_upper_bound(1000, 100) == pytest.approx(1.6438, abs=5e-5)


def test_levels_are_ordered():
    high = multiplier_upper_bound(1000, 100, level="high")
    medium = multiplier_upper_bound(1000, 100, level="medium")
    low = multiplier_upper_bound(1000, 100, level="low")
    assert low == 1.0
    assert medium == pytest.approx(2.0 - 1.0 / (1.0 + 24.0 * math.e * math.log(100) / 1000))
    assert low < medium < high < 2.0


def test_full_support_bound():
    value = multiplier_upper_bound(1000, 100, family="gaussian_full")
    assert 1.0 < value < 2.0
    with pytest.raises(DomainError, match="no levels"):
        multiplier_upper_bound(1000, 100, family="gaussian_full", level="medium")


def test_bound_arguments_checked():
    with pytest.raises(DomainError, match="m >= 2"):
        multiplier_upper_bound(10, 1)
    with pytest.raises(DomainError, match="Unknown multiplier level"):
        multiplier_upper_bound(10, 5, level="extreme")
    with pytest.raises(DomainError, match="Unknown multiplier family"):
        multiplier_upper_bound(10, 5, family="gamma")


class TestAmplify:
    def setup_method(self):
        rng = np.random.default_rng(3)
        data = Dataset(np.abs(rng.normal(size=(30, 3))))
        h = parse_hspec("pow:1:3")
        self.centered = assemble(ModelSpec(1.0, 1.0, centered=True), h, data)
        self.noncentered = assemble(ModelSpec(1.0, 1.0), h, data)

    def test_multiplier_scales_k_diagonal_only(self):
        loss = amplify(self.noncentered, AmplifierSpec.multiplier(1.5))
        idx = np.arange(3)
        np.testing.assert_allclose(
            loss.gamma[:, idx, idx], 1.5 * self.noncentered.gamma[:, idx, idx]
        )
        np.testing.assert_array_equal(loss.gamma[:, 3, 3], self.noncentered.gamma[:, 3, 3])
        np.testing.assert_array_equal(loss.g, self.noncentered.g)
        assert loss.delta == 1.5
        assert loss.is_amplified

    def test_raw_removes_amplifier(self):
        loss = amplify(self.centered, AmplifierSpec.multiplier(1.8))
        np.testing.assert_allclose(loss.raw().gamma, self.centered.gamma, atol=1e-14)
        assert not loss.raw().is_amplified

    def test_explicit_amplifier(self):
        gamma = np.full((3, 3), 0.25)
        spec = AmplifierSpec(mode=AmplifierMode.EXPLICIT, gamma=gamma)
        loss = amplify(self.noncentered, spec)
        idx = np.arange(3)
        np.testing.assert_allclose(
            loss.gamma[:, idx, idx] - self.noncentered.gamma[:, idx, idx], 0.25
        )
        assert loss.amplifier.shape == (3, 4)
        np.testing.assert_array_equal(loss.amplifier[:, 3], 0.0)

    def test_unit_multiplier_is_identity(self):
        assert amplify(self.centered, AmplifierSpec.multiplier(1.0)) is self.centered

    def test_noncentered_scope(self):
        spec = AmplifierSpec.multiplier(1.5, scope=AmplifierScope.ALL_DIAGONAL)
        with pytest.raises(DomainError, match="only amplify the K block"):
            amplify(self.noncentered, spec)

    def test_centered_all_diagonal_scope(self):
        spec = AmplifierSpec.multiplier(1.5, scope=AmplifierScope.ALL_DIAGONAL)
        loss = amplify(self.centered, spec)
        assert loss.delta == 1.5

    def test_bad_specs(self):
        with pytest.raises(DomainError, match="Multiplier must be >= 1"):
            AmplifierSpec.multiplier(0.5)
        with pytest.raises(DomainError, match="requires gamma"):
            AmplifierSpec(mode=AmplifierMode.EXPLICIT)
        with pytest.raises(DomainError, match="non-negative"):
            AmplifierSpec(mode=AmplifierMode.EXPLICIT, gamma=-np.ones((3, 3)))
        with pytest.raises(DomainError, match="Explicit amplifier must have shape"):
            amplify(self.centered, AmplifierSpec(mode=AmplifierMode.EXPLICIT, gamma=np.ones(3)))
