"""Tests for the Monte Carlo population constants."""

import numpy as np
import pytest

from src.evaluation import population_diagnostics
from src.model import DomainError, InteractionParams, ModelSpec, parse_hspec
from src.sampling import GibbsConfig, GraphSpec, generate_k0, trial_rng

CFG = GibbsConfig(burn_in=50, thin=2, chains=200)


def test_centered_constants():
    params = generate_k0(6, GraphSpec(pi=1.0, num_blocks=2), trial_rng(0))
    report = population_diagnostics(
        ModelSpec(1.0, 1.0, centered=True), params, parse_hspec("pow:1:3"), 4000, CFG, trial_rng(1)
    )
    assert report.alpha <= 1.0
    assert report.c_gamma0 > 0
    assert report.c_psi0 == pytest.approx(float(np.max(np.sum(np.abs(params.K), axis=0))))
    assert report.d_psi0 == 3
    assert report.mc_samples == 4000
    assert set(report.to_dict()) == {"alpha", "c_gamma0", "c_psi0", "d_psi0", "mc_samples"}


def test_noncentered_support_counts_eta():
    params = InteractionParams(np.eye(3), np.full(3, 0.5))
    report = population_diagnostics(
        ModelSpec(1.0, 1.0), params, parse_hspec("pow:1:3"), 20000, CFG, trial_rng(2)
    )
    assert report.d_psi0 == 2
    assert report.c_psi0 == pytest.approx(1.5)
    assert report.alpha <= 1.0


def test_needs_two_samples():
    params = InteractionParams(np.eye(2))
    with pytest.raises(DomainError, match="mc_n"):
        population_diagnostics(
            ModelSpec(1.0, 1.0, centered=True), params, parse_hspec("pow:1:3"), 1, CFG, trial_rng(0)
        )
