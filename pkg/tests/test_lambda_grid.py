import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ensearch.data_model import (
    Coefficients,
    DegenerateResponseError,
    InvalidArgumentError,
    PenaltyPoint,
    as_dataset,
    standardize,
)
from ensearch.lambda_grid import build_shared_grid, default_lambda_min_ratio, lambda_max, log_grid
from ensearch.solver import fit_standardized_path, kkt_check
from ensearch.synthetic import gaussian_linear

DEFAULT_ALPHAS = np.linspace(0.05, 0.95, 10)


@pytest.fixture
def two_point():
    return as_dataset(np.array([[1.0], [-1.0]]), np.array([1.0, -1.0]))


def test_lambda_max_two_point(two_point):
    assert lambda_max(two_point, 0.5) == pytest.approx(2.0, rel=1e-9)
    assert lambda_max(two_point, 1.0) == pytest.approx(1.0, rel=1e-9)


def test_lambda_max_is_kkt_boundary(two_point):
    null = Coefficients(0.0, np.zeros(1))
    assert kkt_check(two_point, null, PenaltyPoint(0.5, 2.0), tol=1e-10)
    assert not kkt_check(two_point, null, PenaltyPoint(0.5, 1.98), tol=1e-10)
    assert kkt_check(two_point, null, PenaltyPoint(1.0, 1.0), tol=1e-10)
    assert not kkt_check(two_point, null, PenaltyPoint(1.0, 0.99), tol=1e-10)


def test_lambda_max_constant_response():
    with pytest.raises(DegenerateResponseError, match="degenerate response"):
        lambda_max(as_dataset(np.array([[1.0], [2.0], [3.0]]), np.full(3, 7.0)), 0.5)


def test_lambda_max_clamps_alpha():
    data, _ = gaussian_linear(30, 3, seed=0)
    xs = standardize(data)[0]
    assert lambda_max(xs, 0.0) == lambda_max(xs, 0.001)
    assert np.isfinite(lambda_max(xs, 0.0))


def test_log_grid_example():
    np.testing.assert_allclose(log_grid(1.0, 3, 0.01), [1.0, 0.1, 0.01], rtol=1e-14)


def test_shared_grid_anchored_at_smallest_alpha():
    data, _ = gaussian_linear(40, 5, seed=1)
    xs = standardize(data)[0]
    grid = build_shared_grid(xs, DEFAULT_ALPHAS, 50, 1e-3)
    assert grid[0] == lambda_max(xs, 0.05)
    assert grid[-1] == pytest.approx(grid[0] * 1e-3, rel=1e-12)


@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=6, unique=True), st.integers(2, 40),
       st.floats(1e-5, 0.5))
def test_shared_grid_strictly_decreasing(alphas, nlambda, ratio):
    data, _ = gaussian_linear(25, 4, seed=2)
    xs = standardize(data)[0]
    grid = build_shared_grid(xs, sorted(alphas), nlambda, ratio)
    assert grid.shape == (nlambda,)
    assert np.all(np.diff(grid) < 0)


def test_shared_grid_validation():
    data, _ = gaussian_linear(25, 4, seed=2)
    xs = standardize(data)[0]
    with pytest.raises(InvalidArgumentError):
        build_shared_grid(xs, [0.5, 0.2], 10, 0.01)
    with pytest.raises(InvalidArgumentError):
        build_shared_grid(xs, [0.5], 1, 0.01)
    with pytest.raises(InvalidArgumentError):
        build_shared_grid(xs, [0.5], 10, 1.5)


def test_default_ratio():
    assert default_lambda_min_ratio(100, 10) == 1e-4
    assert default_lambda_min_ratio(10, 100) == 1e-2


def test_endpoint_property_on_signal_data():
    data, _ = gaussian_linear(80, 6, seed=3, n_signal=3)
    xs, stats = standardize(data)
    grid = build_shared_grid(xs, DEFAULT_ALPHAS, 60, 1e-3)
    for a in DEFAULT_ALPHAS:
        path = fit_standardized_path(xs, stats, a, grid)
        lm = lambda_max(xs, a)
        assert path.nzero[0] == 0
        below = np.flatnonzero(grid < lm)
        assert path.nzero[below[0]] >= 1
        assert np.all(path.nzero[grid >= lm] == 0)
