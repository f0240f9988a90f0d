"""K-fold cross-validation of a lambda path at fixed alpha."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .data_model import (
    DataError,
    Dataset,
    DegenerateResponseError,
    Family,
    InvalidArgumentError,
    apply_standardization,
    standardize,
)
from .solver import SolverConfig, fit_standardized_path

PROB_CLAMP = 1e-5


@dataclass(frozen=True, eq=False)
class FoldAssignment:
    """1-based fold labels drawn with numpy's PCG64 generator seeded by ``seed``."""

    fold_of: np.ndarray
    k: int
    seed: int
    stratified: bool = False
    fallback: bool = False  # some stratum was smaller than k

    def __eq__(self, other):
        if not isinstance(other, FoldAssignment):
            return NotImplemented
        return (self.k == other.k and self.seed == other.seed
                and np.array_equal(self.fold_of, other.fold_of))

    __hash__ = None

    @property
    def n(self) -> int:
        return self.fold_of.shape[0]

    def test_rows(self, f: int) -> np.ndarray:
        return np.flatnonzero(self.fold_of == f)

    def train_rows(self, f: int) -> np.ndarray:
        return np.flatnonzero(self.fold_of != f)


def assign_folds(n: int, k: int, seed: int, strata=None) -> FoldAssignment:
    """Random fold membership with fold sizes differing by at most one.

    With ``strata`` each stratum is dealt round-robin over the folds,
    continuing where the previous stratum stopped, so both the overall and
    per-stratum counts are balanced to within one.
    """
    if k < 2:
        raise InvalidArgumentError("need at least 2 folds")
    if k > n:
        raise InvalidArgumentError(f"cannot make {k} folds from {n} observations")
    if n < 2 * k:
        raise InvalidArgumentError(f"{k} folds over {n} observations leaves a fold with fewer than 2")
    if seed < 0 or seed >= 2**64:
        raise InvalidArgumentError("seed must be an unsigned 64-bit integer")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    label_perm = rng.permutation(k)
    order = []
    stratified = strata is not None
    fallback = False
    if stratified:
        strata = np.asarray(strata)
        if strata.shape != (n,):
            raise InvalidArgumentError("strata must have one entry per observation")
        for level in np.unique(strata):
            members = np.flatnonzero(strata == level)
            if members.size < k:
                fallback = True
            order.append(rng.permutation(members))
        if fallback:
            warnings.warn("a stratum is smaller than k; its members cannot reach every fold", stacklevel=2)
        order = np.concatenate(order)
    else:
        order = rng.permutation(n)
    fold_of = np.empty(n, dtype=np.int64)
    fold_of[order] = label_perm[np.arange(n) % k] + 1
    fold_of.setflags(write=False)
    return FoldAssignment(fold_of, int(k), int(seed), stratified, fallback)


@dataclass(frozen=True, eq=False)
class CvCurve:
    alpha: float
    lambdas: np.ndarray
    cvm: np.ndarray
    cvsd: np.ndarray
    nzero: np.ndarray
    fold_means: np.ndarray  # K x L per-fold mean loss

    def __eq__(self, other):
        if not isinstance(other, CvCurve):
            return NotImplemented
        return (self.alpha == other.alpha and np.array_equal(self.lambdas, other.lambdas)
                and np.array_equal(self.cvm, other.cvm) and np.array_equal(self.cvsd, other.cvsd)
                and np.array_equal(self.nzero, other.nzero))

    __hash__ = None


def heldout_loss(family: Family, y: np.ndarray, link: np.ndarray) -> np.ndarray:
    """Per-observation loss on the linear predictor scale; ``link`` is n x L."""
    y = y[:, None]
    if family is Family.BINOMIAL:
        prob = np.clip(1.0 / (1.0 + np.exp(-link)), PROB_CLAMP, 1.0 - PROB_CLAMP)
        return -2.0 * (y * np.log(prob) + (1.0 - y) * np.log1p(-prob))
    return (y - link) ** 2


def _check_training(train: Dataset, f: int):
    if train.y.min() == train.y.max():
        raise DegenerateResponseError(f"fold {f}: training response is constant")


def fold_losses(data: Dataset, alpha: float, lambdas, folds: FoldAssignment,
                cfg: SolverConfig | None = None, scale: bool = True) -> np.ndarray:
    """K x L matrix of held-out mean losses, folds in ascending label order."""
    if folds.n != data.n:
        raise InvalidArgumentError("fold assignment does not match the dataset size")
    lambdas = np.asarray(lambdas, dtype=float)
    means = np.empty((folds.k, lambdas.size))
    for f in range(1, folds.k + 1):
        test = folds.test_rows(f)
        try:
            train = data.subset(folds.train_rows(f))
        except DataError as exc:
            raise DegenerateResponseError(f"fold {f}: {exc}") from exc
        _check_training(train, f)
        try:
            xs, stats = standardize(train, scale=scale)
        except DataError as exc:
            raise DataError(f"fold {f}: {exc}") from exc
        path = fit_standardized_path(xs, stats, alpha, lambdas, cfg)
        link = path.std_intercepts[None, :] + apply_standardization(data.x[test], stats) @ path.std_betas.T
        means[f - 1] = heldout_loss(data.family, data.y[test], link).mean(axis=0)
    return means


def summarize_folds(fold_means: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """cvm = mean of fold means; cvsd = sd(fold means, ddof=1) / sqrt(K)."""
    k = fold_means.shape[0]
    cvm = fold_means.mean(axis=0)
    cvsd = fold_means.std(axis=0, ddof=1) / np.sqrt(k)
    return cvm, cvsd


def cv_path(data: Dataset, alpha: float, lambdas, folds: FoldAssignment,
            cfg: SolverConfig | None = None, scale: bool = True, nzero=None) -> CvCurve:
    """Cross-validated error curve over ``lambdas`` at fixed ``alpha``.

    Each training split is standardized with its own statistics. ``nzero``
    comes from a full-data path unless supplied by the caller.
    """
    lambdas = np.asarray(lambdas, dtype=float)
    fold_means = fold_losses(data, alpha, lambdas, folds, cfg, scale)
    cvm, cvsd = summarize_folds(fold_means)
    if nzero is None:
        xs, stats = standardize(data, scale=scale)
        nzero = fit_standardized_path(xs, stats, alpha, lambdas, cfg).nzero
    return CvCurve(float(alpha), lambdas, cvm, cvsd, np.asarray(nzero), fold_means)
