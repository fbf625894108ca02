"""Tests for loss snapshots and the back-transform of scaled estimates."""

import numpy as np
import pytest

from src.loss import (
    AmplifierSpec,
    amplify,
    assemble,
    back_transform_estimate,
    read_snapshot,
    write_snapshot,
)
from src.model import Dataset, DomainError, ModelSpec, parse_hspec
from src.solver import Estimate


def test_snapshot_restores_identical_loss(tmp_path):
    rng = np.random.default_rng(6)
    data = Dataset(np.abs(rng.normal(size=(25, 3))))
    loss = amplify(
        assemble(ModelSpec(1.0, 1.0), parse_hspec("log1p:inf"), data),
        AmplifierSpec.multiplier(1.3),
    )
    path = write_snapshot(loss, tmp_path / "loss.bin")
    restored = read_snapshot(path)

    np.testing.assert_array_equal(restored.gamma, loss.gamma)
    np.testing.assert_array_equal(restored.g, loss.g)
    np.testing.assert_array_equal(restored.amplifier, loss.amplifier)
    assert restored.layout == loss.layout
    assert restored.spec == loss.spec
    assert restored.hspec == "log1p:inf"
    assert restored.delta == 1.3
    assert restored.n == 25


def test_snapshot_rejects_other_files(tmp_path):
    path = tmp_path / "other.bin"
    path.write_bytes(b"not a snapshot\n")
    with pytest.raises(DomainError, match="not a loss snapshot"):
        read_snapshot(path)


def test_truncated_snapshot(tmp_path):
    data = Dataset(np.ones((4, 2)) + np.eye(4, 2))
    loss = assemble(ModelSpec(1.0, 1.0, centered=True), parse_hspec("pow:1:3"), data)
    path = write_snapshot(loss, tmp_path / "loss.bin")
    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(DomainError, match="truncated"):
        read_snapshot(path)


class TestBackTransform:
    def setup_method(self):
        self.K = np.array([[2.0, -0.5], [-0.5, 1.0]])
        self.scale = np.array([2.0, 4.0])

    def test_power_model(self):
        est = Estimate(K=self.K, eta=np.array([1.0, 1.0]), lam=0.1)
        out = back_transform_estimate(est, self.scale, ModelSpec(0.5, 0.5))
        sa = np.sqrt(self.scale)
        np.testing.assert_allclose(out.K, self.K / np.outer(sa, sa))
        np.testing.assert_allclose(out.eta, 1.0 / sa)
        assert out.support == est.support
        assert out.lam == 0.1

    def test_log_eta_unchanged(self):
        est = Estimate(K=self.K, eta=np.array([1.0, -0.5]))
        out = back_transform_estimate(est, self.scale, ModelSpec(1.0, 0.0))
        np.testing.assert_array_equal(out.eta, est.eta)
        np.testing.assert_allclose(out.K[0, 1], -0.5 / 8.0)

    def test_scale_checked(self):
        est = Estimate(K=self.K)
        with pytest.raises(DomainError, match="one positive entry"):
            back_transform_estimate(est, np.array([1.0, 0.0]), ModelSpec(1.0, 1.0))
