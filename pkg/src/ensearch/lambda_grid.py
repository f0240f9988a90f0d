"""Shared lambda grid: one decreasing vector used for every alpha in a search."""
from __future__ import annotations

import numpy as np

from .data_model import Dataset, DegenerateResponseError, InvalidArgumentError

ALPHA_FLOOR = 1e-3
# Relative headroom so the null fit at lambda_max survives rounding in the solver's
# gradient accumulation (the boundary is an equality case).
_BOUNDARY_SLACK = 1e-10


def default_lambda_min_ratio(n: int, p: int) -> float:
    return 1e-4 if n > p else 1e-2


def null_gradient(data: Dataset) -> np.ndarray:
    """Per-predictor score ``|X^T (y - ybar)| / N`` at the intercept-only fit."""
    resid = data.y - data.y.mean()
    return np.abs(data.x.T @ resid) / data.n


def lambda_max(data: Dataset, alpha: float) -> float:
    """Smallest lambda at which the all-zero coefficient vector is optimal.

    The same formula serves both families: at the intercept-only fit the
    binomial residual is ``y - mean(y)`` too.
    """
    if not 0.0 <= alpha <= 1.0:
        raise InvalidArgumentError(f"alpha must lie in [0, 1], got {alpha}")
    top = float(null_gradient(data).max())
    scale = max(1.0, float(np.abs(data.y).max())) * max(1.0, float(np.abs(data.x).max()))
    if top <= 1e-14 * scale:
        raise DegenerateResponseError("degenerate response: no predictor is correlated with y")
    return top * (1.0 + _BOUNDARY_SLACK) / max(alpha, ALPHA_FLOOR)


def log_grid(top: float, nlambda: int, lambda_min_ratio: float) -> np.ndarray:
    if nlambda < 2:
        raise InvalidArgumentError("nlambda must be >= 2")
    if not 0.0 < lambda_min_ratio < 1.0:
        raise InvalidArgumentError("lambda_min_ratio must lie in (0, 1)")
    return top * np.logspace(0.0, np.log10(lambda_min_ratio), nlambda)


def build_shared_grid(data: Dataset, alphas, nlambda: int = 100, lambda_min_ratio: float | None = None) -> np.ndarray:
    """Log-uniform grid from the largest per-alpha lambda_max down by ``lambda_min_ratio``.

    ``data`` should already be on the working (standardized) basis.
    """
    alphas = np.asarray(alphas, dtype=float)
    if alphas.ndim != 1 or alphas.size == 0:
        raise InvalidArgumentError("alphas must be a non-empty vector")
    if np.any(alphas < 0) or np.any(alphas > 1) or np.any(np.diff(alphas) <= 0):
        raise InvalidArgumentError("alphas must be sorted, unique and inside [0, 1]")
    if lambda_min_ratio is None:
        lambda_min_ratio = default_lambda_min_ratio(data.n, data.p)
    top = max(lambda_max(data, a) for a in alphas)
    grid = log_grid(top, nlambda, lambda_min_ratio)
    grid.setflags(write=False)
    return grid

