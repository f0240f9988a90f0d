"""Coordinate descent elastic net solver for gaussian and binomial families."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _cd
from .data_model import (
    Basis,
    Coefficients,
    Dataset,
    Family,
    InvalidArgumentError,
    NumericFailureError,
    PenaltyPoint,
    StandardizationStats,
    destandardize,
    standardize,
)


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-9
    max_passes: int = 100_000
    irls_max_iter: int = 25
    irls_tol: float = 1e-8
    min_prob_clamp: float = 1e-5

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidArgumentError("tol must be positive")
        if self.max_passes < 1 or self.irls_max_iter < 1:
            raise InvalidArgumentError("iteration limits must be >= 1")
        if not 0.0 < self.min_prob_clamp < 0.5:
            raise InvalidArgumentError("min_prob_clamp must lie in (0, 0.5)")


@dataclass(frozen=True, eq=False)
class FitPath:
    """Full-data fits along a decreasing lambda grid at one alpha.

    ``intercepts``/``betas`` are on the original predictor scale; the
    ``std_*`` arrays hold the same fits on the standardized basis.
    """

    alpha: float
    lambdas: np.ndarray
    intercepts: np.ndarray
    betas: np.ndarray
    nzero: np.ndarray
    converged: np.ndarray
    std_intercepts: np.ndarray
    std_betas: np.ndarray
    stats: StandardizationStats
    clamped: np.ndarray = field(default=None)

    def coefficients(self, k: int, basis: Basis = Basis.ORIGINAL) -> Coefficients:
        if basis is Basis.ORIGINAL:
            return Coefficients(self.intercepts[k], self.betas[k], Basis.ORIGINAL, bool(self.converged[k]))
        return Coefficients(self.std_intercepts[k], self.std_betas[k], Basis.STANDARDIZED, bool(self.converged[k]))


def soft_threshold(z: float, gamma: float) -> float:
    if gamma < 0:
        raise InvalidArgumentError("gamma must be >= 0")
    return float(np.sign(z) * max(abs(z) - gamma, 0.0))


def _pinned(x: np.ndarray) -> np.ndarray:
    return ~np.any(x != 0.0, axis=0)


def _start(data: Dataset, warm: Coefficients | None):
    if warm is None:
        return 0.0, np.zeros(data.p)
    if warm.beta.shape[0] != data.p:
        raise InvalidArgumentError("warm start has the wrong length")
    return warm.intercept, np.array(warm.beta, dtype=float)


def fit_at(data: Dataset, point: PenaltyPoint, warm: Coefficients | None = None,
           cfg: SolverConfig | None = None) -> Coefficients:
    """Gaussian elastic net fit at one (alpha, lambda) on standardized data.

    Columns that are identically zero are treated as flagged constant
    predictors and keep a zero coefficient. Hitting ``max_passes`` returns
    the current iterate with ``converged=False``.
    """
    if data.family is not Family.GAUSSIAN:
        raise InvalidArgumentError("fit_at handles the gaussian family; use fit_binomial_at")
    cfg = cfg or SolverConfig()
    x = np.asfortranarray(data.x)
    b0, beta = _start(data, warm)
    w = np.full(data.n, 1.0 / data.n)
    xv = _cd.column_weighted_sq(x, w, _pinned(x))
    b0, passes, ok = _cd.cd_weighted(x, w, data.y, b0, beta, xv, point.lam, point.alpha,
                                     cfg.tol, cfg.max_passes)
    if not (np.isfinite(b0) and np.all(np.isfinite(beta))):
        raise NumericFailureError(f"non-finite coefficients at alpha={point.alpha}, lambda={point.lam}")
    return Coefficients(b0, beta, Basis.STANDARDIZED, bool(ok), int(passes))


def fit_binomial_at(data: Dataset, point: PenaltyPoint, warm: Coefficients | None = None,
                    cfg: SolverConfig | None = None) -> Coefficients:
    """Penalized logistic fit at one (alpha, lambda) via IRLS."""
    if data.family is not Family.BINOMIAL:
        raise InvalidArgumentError("fit_binomial_at needs a binomial dataset")
    cfg = cfg or SolverConfig()
    x = np.asfortranarray(data.x)
    b0, beta = _start(data, warm)
    b0, passes, ok, clamped, status = _cd.irls_binomial(
        x, data.y, b0, beta, _pinned(x), point.lam, point.alpha, cfg.tol, cfg.max_passes,
        cfg.irls_max_iter, cfg.irls_tol, cfg.min_prob_clamp)
    if status == _cd.IRLS_DIVERGED:
        raise NumericFailureError(
            f"IRLS diverged at alpha={point.alpha}, lambda={point.lam}: "
            "penalized deviance rose on 3 consecutive steps")
    if status == _cd.IRLS_NONFINITE or not np.all(np.isfinite(beta)):
        raise NumericFailureError(f"non-finite IRLS iterate at alpha={point.alpha}, lambda={point.lam}")
    return Coefficients(b0, beta, Basis.STANDARDIZED, bool(ok), int(passes), bool(clamped))


def fit_point(data: Dataset, point: PenaltyPoint, warm: Coefficients | None = None,
              cfg: SolverConfig | None = None) -> Coefficients:
    if data.family is Family.BINOMIAL:
        return fit_binomial_at(data, point, warm, cfg)
    return fit_at(data, point, warm, cfg)


def _check_lambdas(lambdas) -> np.ndarray:
    lambdas = np.asarray(lambdas, dtype=float)
    if lambdas.ndim != 1 or lambdas.size == 0:
        raise InvalidArgumentError("lambdas must be a non-empty vector")
    if np.any(lambdas < 0) or not np.all(np.isfinite(lambdas)):
        raise InvalidArgumentError("lambdas must be finite and >= 0")
    if np.any(np.diff(lambdas) >= 0):
        raise InvalidArgumentError("lambdas must be strictly decreasing")
    return lambdas


def fit_standardized_path(xs: Dataset, stats: StandardizationStats, alpha: float, lambdas,
                          cfg: SolverConfig | None = None) -> FitPath:
    """Warm-started path on data already mapped to the working basis by ``stats``."""
    lambdas = _check_lambdas(lambdas)
    cfg = cfg or SolverConfig()
    L, p = lambdas.size, xs.p
    std_b0 = np.empty(L)
    std_beta = np.empty((L, p))
    converged = np.empty(L, dtype=bool)
    clamped = np.zeros(L, dtype=bool)
    warm = None
    for k, lam in enumerate(lambdas):
        warm = fit_point(xs, PenaltyPoint(alpha, lam), warm, cfg)
        std_b0[k] = warm.intercept
        std_beta[k] = warm.beta
        converged[k] = warm.converged
        clamped[k] = warm.clamped
    betas = np.where(stats.zero_variance, 0.0, std_beta / stats.scales)
    intercepts = std_b0 - betas @ stats.means
    return FitPath(float(alpha), lambdas, intercepts, betas, np.count_nonzero(betas, axis=1),
                   converged, std_b0, std_beta, stats, clamped)


def fit_path(data: Dataset, alpha: float, lambdas, cfg: SolverConfig | None = None,
             scale: bool = True) -> FitPath:
    """Fit a decreasing lambda path at fixed alpha, each fit warm-started from the last.

    The data are centered (and scaled to unit population sd when ``scale``)
    before fitting; returned coefficients are mapped back to the raw basis.
    """
    xs, stats = standardize(data, scale=scale)
    return fit_standardized_path(xs, stats, alpha, lambdas, cfg)


@dataclass(frozen=True, eq=False)
class KKTReport:
    ok: bool
    violations: np.ndarray  # per-coordinate amount by which the condition is exceeded
    intercept_violation: float
    tol: float

    @property
    def violators(self) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.violations > self.tol)]

    def __bool__(self):
        return self.ok


def kkt_check(data: Dataset, coef: Coefficients, point: PenaltyPoint, tol: float = 1e-4) -> KKTReport:
    """First-order optimality check for the gaussian objective on standardized data."""
    if data.family is not Family.GAUSSIAN:
        raise InvalidArgumentError("kkt_check is defined for the gaussian family")
    if coef.scale_basis is not Basis.STANDARDIZED:
        raise InvalidArgumentError("kkt_check expects standardized-basis coefficients")
    lam, alpha = point.lam, point.alpha
    r = data.y - coef.intercept - data.x @ coef.beta
    g = data.x.T @ r / data.n
    b = coef.beta
    active = b != 0.0
    stationarity = np.abs(g - lam * (1.0 - alpha) * b - lam * alpha * np.sign(b))
    slack = np.maximum(np.abs(g) - lam * alpha, 0.0)
    violations = np.where(active, stationarity, slack)
    icpt = abs(float(r.mean()))
    ok = bool(np.all(violations <= tol) and icpt <= tol)
    return KKTReport(ok, violations, icpt, tol)
