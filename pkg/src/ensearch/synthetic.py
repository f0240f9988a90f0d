"""Synthetic datasets with known support, for experiments and tests."""
from __future__ import annotations

import numpy as np

from .data_model import Dataset, Family

TBI_COLUMNS = tuple([f"pcode{j}" for j in range(1, 7)] + [f"ncode{j}" for j in range(1, 7)])


def tbi_like(n: int = 1000, seed: int = 0, true_idx=(0, 3, 7), effect: float = 1.0,
             intercept: float = -1.0, prevalence: float = 0.3) -> Dataset:
    """Binary outcome driven by three of twelve binary code indicators.

    Column names mimic six procedure codes and six billing codes.
    """
    rng = np.random.default_rng(seed)
    x = (rng.random((n, len(TBI_COLUMNS))) < prevalence).astype(float)
    eta = intercept + effect * x[:, list(true_idx)].sum(axis=1)
    y = (rng.random(n) < 1.0 / (1.0 + np.exp(-eta))).astype(float)
    return Dataset(x, y, TBI_COLUMNS, Family.BINOMIAL)


def gaussian_linear(n: int = 50, p: int = 10, seed: int = 0, n_signal: int | None = None,
                    noise: float = 1.0, rho: float = 0.0) -> tuple[Dataset, np.ndarray]:
    """Gaussian design with equicorrelation ``rho`` and a sparse true coefficient vector."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, p))
    x = np.sqrt(1.0 - rho) * z + np.sqrt(rho) * rng.standard_normal((n, 1))
    beta = np.zeros(p)
    k = p if n_signal is None else n_signal
    beta[:k] = rng.choice([-1.0, 1.0], k) * rng.uniform(0.5, 2.0, k)
    y = x @ beta + noise * rng.standard_normal(n)
    return Dataset(x, y, family=Family.GAUSSIAN), beta
