"""Datasets, standardization and the elastic net penalty/objective arithmetic."""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np


class InvalidArgumentError(ValueError):
    pass


class DataError(ValueError):
    """Input data violates a dataset invariant."""


class DegenerateResponseError(DataError):
    pass


class NumericFailureError(ArithmeticError):
    pass


class Family(str, enum.Enum):
    GAUSSIAN = "gaussian"
    BINOMIAL = "binomial"


class Basis(str, enum.Enum):
    STANDARDIZED = "standardized"
    ORIGINAL = "original"


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    x: np.ndarray
    y: np.ndarray
    column_names: tuple = ()
    family: Family = Family.GAUSSIAN

    def __post_init__(self):
        x = _frozen(self.x)
        y = _frozen(self.y)
        if x.ndim == 1:
            x = _frozen(x[:, None])
        if x.ndim != 2 or y.ndim != 1:
            raise InvalidArgumentError("x must be 2-d and y 1-d")
        n, p = x.shape
        if y.shape[0] != n:
            raise InvalidArgumentError(f"x has {n} rows but y has {y.shape[0]} entries")
        if n < 2 or p < 1:
            raise DataError(f"need N >= 2 and p >= 1, got N={n}, p={p}")
        if not np.all(np.isfinite(x)):
            raise DataError("x contains non-finite entries")
        if not np.all(np.isfinite(y)):
            raise DataError("y contains non-finite entries")
        family = Family(self.family)
        if family is Family.BINOMIAL:
            bad = np.flatnonzero((y != 0.0) & (y != 1.0))
            if bad.size:
                raise DataError(f"binomial response must be 0/1; row {bad[0]} has {y[bad[0]]!r}")
            if y.min() == y.max():
                raise DataError("binomial response needs both classes present")
        names = tuple(self.column_names) if len(self.column_names) else tuple(f"x{j + 1}" for j in range(p))
        if len(names) != p:
            raise InvalidArgumentError(f"{len(names)} column names for {p} columns")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "column_names", names)
        object.__setattr__(self, "family", family)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]

    def subset(self, rows) -> "Dataset":
        return Dataset(self.x[rows], self.y[rows], self.column_names, self.family)

    def with_x(self, x) -> "Dataset":
        return Dataset(x, self.y, self.column_names, self.family)


@dataclass(frozen=True, eq=False)
class StandardizationStats:
    means: np.ndarray
    scales: np.ndarray
    zero_variance: np.ndarray  # bool mask; those columns are zeroed, never divided

    @classmethod
    def identity(cls, p: int) -> "StandardizationStats":
        return cls(np.zeros(p), np.ones(p), np.zeros(p, dtype=bool))


@dataclass(frozen=True)
class PenaltyPoint:
    alpha: float
    lam: float

    def __post_init__(self):
        a, l = float(self.alpha), float(self.lam)
        if not (0.0 <= a <= 1.0):
            raise InvalidArgumentError(f"alpha must lie in [0, 1], got {a}")
        if not (np.isfinite(l) and l >= 0.0):
            raise InvalidArgumentError(f"lambda must be finite and >= 0, got {l}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "lam", l)


@dataclass(frozen=True, eq=False)
class Coefficients:
    intercept: float
    beta: np.ndarray
    scale_basis: Basis = Basis.STANDARDIZED
    converged: bool = True
    n_passes: int = 0
    clamped: bool = False  # binomial fitted probabilities hit the clamp

    def __post_init__(self):
        beta = _frozen(self.beta)
        if beta.ndim != 1:
            raise InvalidArgumentError("beta must be a vector")
        if not (np.isfinite(self.intercept) and np.all(np.isfinite(beta))):
            raise NumericFailureError("non-finite coefficients")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "intercept", float(self.intercept))
        object.__setattr__(self, "scale_basis", Basis(self.scale_basis))

    @classmethod
    def zeros(cls, p: int, intercept: float = 0.0, basis=Basis.STANDARDIZED) -> "Coefficients":
        return cls(intercept, np.zeros(p), basis)

    @property
    def nzero(self) -> int:
        return int(np.count_nonzero(self.beta))

    def predict_link(self, x) -> np.ndarray:
        return self.intercept + np.asarray(x, dtype=float) @ self.beta


def penalty(beta, alpha: float) -> float:
    """Elastic net penalty ``sum((1 - alpha) / 2 * b**2 + alpha * |b|)``."""
    b = np.asarray(beta, dtype=float)
    alpha = float(alpha)
    if not np.all(np.isfinite(b)) or not np.isfinite(alpha):
        raise InvalidArgumentError("penalty needs finite inputs")
    if not 0.0 <= alpha <= 1.0:
        raise InvalidArgumentError(f"alpha must lie in [0, 1], got {alpha}")
    return float(np.sum(0.5 * (1.0 - alpha) * b * b + alpha * np.abs(b)))


def objective(data: Dataset, coef: Coefficients, point: PenaltyPoint) -> float:
    """Penalized least squares: ``(1/2N) * ||y - b0 - X b||^2 + lam * P_alpha(b)``."""
    if data.family is not Family.GAUSSIAN:
        raise InvalidArgumentError("objective is defined for the gaussian family")
    if coef.beta.shape[0] != data.p:
        raise InvalidArgumentError(f"coefficient length {coef.beta.shape[0]} != p={data.p}")
    r = data.y - coef.intercept - data.x @ coef.beta
    return float(r @ r / (2.0 * data.n) + point.lam * penalty(coef.beta, point.alpha))


def binomial_objective(data: Dataset, coef: Coefficients, point: PenaltyPoint, clamp: float = 1e-5) -> float:
    """Mean negative log-likelihood plus ``lam * P_alpha(b)``."""
    if coef.beta.shape[0] != data.p:
        raise InvalidArgumentError(f"coefficient length {coef.beta.shape[0]} != p={data.p}")
    eta = coef.intercept + data.x @ coef.beta
    prob = np.clip(1.0 / (1.0 + np.exp(-eta)), clamp, 1.0 - clamp)
    nll = -np.mean(data.y * np.log(prob) + (1.0 - data.y) * np.log1p(-prob))
    return float(nll + point.lam * penalty(coef.beta, point.alpha))


def _is_constant(col: np.ndarray, sd: float, mean: float) -> bool:
    return col.max() == col.min() or sd <= 1e-10 * max(1.0, abs(mean))


def standardize(data: Dataset, scale: bool = True) -> tuple[Dataset, StandardizationStats]:
    """Center every predictor and (if ``scale``) divide by its population sd.

    Constant columns are set to zero and flagged in the returned stats; the
    solver pins their coefficients at zero. ``y`` is left untouched.
    """
    x = data.x
    means = x.mean(axis=0)
    sds = x.std(axis=0)  # divisor N
    flags = np.array([_is_constant(x[:, j], sds[j], means[j]) for j in range(data.p)])
    if flags.all():
        raise DataError("no varying predictors")
    scales = np.where(flags | (not scale), 1.0, sds)
    xs = (x - means) / scales
    xs[:, flags] = 0.0
    stats = StandardizationStats(_frozen(means), _frozen(scales), _frozen(flags, dtype=bool))
    return data.with_x(xs), stats


def destandardize(coef: Coefficients, stats: StandardizationStats) -> Coefficients:
    if coef.scale_basis is not Basis.STANDARDIZED:
        raise InvalidArgumentError("coefficients are not on the standardized basis")
    if coef.beta.shape[0] != stats.means.shape[0]:
        raise InvalidArgumentError("coefficient length does not match stats")
    beta = np.where(stats.zero_variance, 0.0, coef.beta / stats.scales)
    intercept = coef.intercept - float(beta @ stats.means)
    return replace(coef, intercept=intercept, beta=beta, scale_basis=Basis.ORIGINAL)


def apply_standardization(x, stats: StandardizationStats) -> np.ndarray:
    """Map raw predictor rows onto the standardized basis described by ``stats``."""
    xs = (np.asarray(x, dtype=float) - stats.means) / stats.scales
    xs[:, stats.zero_variance] = 0.0
    return xs


def as_dataset(x, y, family="gaussian", column_names: Sequence[str] = ()) -> Dataset:
    return Dataset(np.asarray(x, dtype=float), np.asarray(y, dtype=float), tuple(column_names), Family(family))
