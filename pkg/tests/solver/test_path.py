"""Tests for the penalty grid and warm-started paths."""

import math

import numpy as np
import pytest

from src.model import DomainError
from src.solver import (
    Estimate,
    EstimatePath,
    SolverConfig,
    coordinate_descent,
    lambda_grid,
    lambda_max,
    solve_path,
)

from .oracle import random_loss


@pytest.fixture
def centered():
    return random_loss(np.random.default_rng(11), 5, noncentered=False)


@pytest.fixture
def noncentered():
    return random_loss(np.random.default_rng(12), 5, noncentered=True)


def test_centered_lambda_max_gives_empty_estimate(centered):
    lam = lambda_max(centered)
    assert lam == pytest.approx(float(np.max(np.abs(centered.g))))
    est = coordinate_descent(centered, lam)
    assert not np.any(est.K)
    below = coordinate_descent(centered, 0.05 * lam)
    assert np.any(below.K)


def test_noncentered_lambda_max_with_ratio_one(noncentered):
    lam = lambda_max(noncentered, 1.0)
    assert lam == pytest.approx(float(np.max(np.abs(noncentered.g))))
    est = coordinate_descent(noncentered, lam, lam)
    assert not np.any(est.K)
    assert not np.any(est.eta)


def test_noncentered_lambda_max_with_ratio(noncentered):
    m = noncentered.m
    g1 = np.max(np.abs(noncentered.g[:, :m]))
    g2 = np.max(np.abs(noncentered.g[:, m]))
    assert lambda_max(noncentered, 0.25) == pytest.approx(max(g1, g2 / 0.25))
    assert lambda_max(noncentered, math.inf) == pytest.approx(g1)


def test_lambda_max_with_free_eta(noncentered):
    cfg = SolverConfig(tol=1e-12, max_iter=100000, lambda_ratio=0.0)
    lam = lambda_max(noncentered, 0.0)
    just_above = coordinate_descent(noncentered, 1.0001 * lam, 0.0, cfg=cfg)
    assert not np.any(just_above.K)
    m = noncentered.m
    expected_eta = noncentered.g[:, m] / noncentered.gamma[:, m, m]
    np.testing.assert_allclose(just_above.eta, expected_eta, rtol=1e-8)

    below = coordinate_descent(noncentered, 0.05 * lam, 0.0, cfg=cfg)
    assert np.any(below.K)


def test_lambda_grid_endpoints():
    grid = lambda_grid(2.0)
    assert len(grid) == 50
    assert grid[0] == pytest.approx(2.0)
    assert grid[-1] == pytest.approx(0.02)
    assert np.all(np.diff(grid) < 0)
    np.testing.assert_allclose(grid[1:] / grid[:-1], grid[1] / grid[0])

    np.testing.assert_array_equal(lambda_grid(3.0, num=1), [3.0])
    assert lambda_grid(1.0, num=5, min_ratio=0.1)[-1] == pytest.approx(0.1)


@pytest.mark.parametrize(
    "args, message",
    [
        ((0.0,), "positive"),
        ((1.0, 0), "at least one"),
        ((1.0, 10, 1.0), "min_ratio"),
        ((1.0, 10, 0.0), "min_ratio"),
    ],
)
def test_lambda_grid_rejects_bad_arguments(args, message):
    with pytest.raises(DomainError, match=message):
        lambda_grid(*args)


def test_path_is_warm_started_and_decreasing(noncentered):
    cfg = SolverConfig(tol=1e-11, max_iter=100000)
    grid = lambda_grid(lambda_max(noncentered, cfg.lambda_ratio), num=12)
    path = solve_path(noncentered, grid, cfg)

    assert len(path) == 12
    np.testing.assert_allclose(path.lambdas, grid)
    assert path[0].edges == []
    assert all(e.converged for e in path)
    assert len(path[-1].edges) >= len(path[0].edges)

    for k in (3, 11):
        cold = coordinate_descent(noncentered, grid[k], grid[k], cfg=cfg)
        np.testing.assert_allclose(path[k].K, cold.K, atol=1e-7)
        np.testing.assert_allclose(path[k].eta, cold.eta, atol=1e-7)


def test_path_with_pinned_eta(noncentered):
    cfg = SolverConfig(lambda_ratio=math.inf)
    grid = lambda_grid(lambda_max(noncentered, math.inf), num=5)
    path = solve_path(noncentered, grid, cfg)
    assert all(not np.any(e.eta) for e in path)


def test_path_rejects_bad_grids(centered):
    with pytest.raises(DomainError, match="empty"):
        solve_path(centered, [])
    with pytest.raises(DomainError, match="strictly decreasing"):
        solve_path(centered, [1.0, 1.0])
    with pytest.raises(DomainError, match="strictly decreasing"):
        solve_path(centered, [0.1, 0.2])


def test_estimate_path_rejects_increasing_penalties():
    K = np.eye(3)
    with pytest.raises(DomainError, match="strictly decreasing"):
        EstimatePath([Estimate(K, lam=0.1), Estimate(K, lam=0.2)])
    path = EstimatePath([Estimate(K, lam=0.2), Estimate(K, lam=0.1)])
    assert path.lambdas == [0.2, 0.1]
