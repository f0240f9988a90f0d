"""Desk-scale recovery and fold-sensitivity experiments on tbi-shaped synthetic data."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .search import SearchConfig, SensitivityResult, preferable, search, sensitivity_analysis
from .synthetic import tbi_like

TRUE_IDX = (0, 3, 7)


@dataclass(frozen=True)
class RecoveryConfig:
    n_reps: int = 20
    n: int = 1000
    k_folds: int = 10
    alphas: np.ndarray = field(default_factory=lambda: np.linspace(0.05, 0.95, 10))
    true_idx: tuple = TRUE_IDX
    first_seed: int = 0


@dataclass(frozen=True)
class RecoveryRep:
    seed: int
    alpha: float
    lam: float
    nzero: int
    support: tuple
    recovered: bool
    seconds: float


def recovery_experiment(cfg: RecoveryConfig = RecoveryConfig(), threads: int = 1, log=None) -> list[RecoveryRep]:
    """Replication r draws data and folds from seed ``first_seed + r``."""
    out = []
    for r in range(cfg.n_reps):
        seed = cfg.first_seed + r
        t0 = time.perf_counter()
        data = tbi_like(cfg.n, seed=seed, true_idx=cfg.true_idx)
        res = search(data, SearchConfig(alphas=cfg.alphas, k_folds=cfg.k_folds, seed=seed), threads=threads)
        rec, coef = preferable(res)
        support = tuple(int(j) for j in np.flatnonzero(coef.beta))
        rep = RecoveryRep(seed, rec.alpha, rec.lam, coef.nzero, support,
                          all(j in support for j in cfg.true_idx), time.perf_counter() - t0)
        out.append(rep)
        if log is not None:
            log(rep)
    return out


def sensitivity_experiment(data_seed: int = 0, n_reps: int = 10, seed: int = 0, n: int = 1000,
                           threads: int = 1) -> SensitivityResult:
    """Fold-membership sensitivity on one recovery dataset (fold seeds ``seed .. seed + n_reps - 1``)."""
    data = tbi_like(n, seed=data_seed)
    return sensitivity_analysis(data, SearchConfig(seed=seed), n_reps, threads=threads)
