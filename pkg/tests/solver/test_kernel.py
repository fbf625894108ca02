"""Tests for unboundedness certificates of rank-deficient losses."""

import numpy as np
import pytest

from src.loss import AmplifierSpec, amplify, assemble
from src.model import Dataset, ModelSpec, parse_hspec
from src.solver import (
    kernel_unbounded_direction,
    penalized_objective,
    penalty_weights,
)


@pytest.fixture
def single_row_loss():
    data = Dataset(np.array([[1.0, 2.0]]))
    return assemble(ModelSpec(1.0, 1.0, centered=True), parse_hspec("pow:1:3"), data)


@pytest.mark.parametrize("lam", [0.0, 0.1])
def test_direction_certifies_unboundedness(single_row_loss, lam):
    found = kernel_unbounded_direction(single_row_loss, lam)
    assert found is not None
    assert found.certificate < 0
    assert np.sum(np.abs(found.direction)) == pytest.approx(1.0)
    assert np.count_nonzero(np.any(found.direction != 0, axis=1)) == 1

    nu = found.direction
    weights = penalty_weights(single_row_loss, lam, 0.0, True)
    for a in (1.0, 10.0, 100.0):
        value = penalized_objective(single_row_loss, a * nu, weights)
        assert value == pytest.approx(a * found.certificate, rel=1e-8, abs=1e-9)


def test_large_penalty_has_no_certificate(single_row_loss):
    assert kernel_unbounded_direction(single_row_loss, 10.0) is None


def test_amplified_loss_is_bounded(single_row_loss):
    loss = amplify(single_row_loss, AmplifierSpec.multiplier(1.5))
    for j in range(loss.m):
        assert np.linalg.eigvalsh(loss.gamma[j])[0] > 0
    assert kernel_unbounded_direction(loss, 0.0) is None
