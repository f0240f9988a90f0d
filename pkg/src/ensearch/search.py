"""Joint lambda-alpha search, summary tables, model selection and diagnostics."""
from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cross_validation import CvCurve, FoldAssignment, assign_folds, fold_losses, summarize_folds
from .data_model import (
    Basis,
    Coefficients,
    Dataset,
    Family,
    InvalidArgumentError,
    PenaltyPoint,
    StandardizationStats,
    destandardize,
    standardize,
)
from .lambda_grid import build_shared_grid, default_lambda_min_ratio
from .solver import FitPath, SolverConfig, fit_point, fit_standardized_path

Z_FLOOR = 1e-2


def default_alphas() -> np.ndarray:
    return np.linspace(0.05, 0.95, 10)


@dataclass(frozen=True, eq=False)
class SearchConfig:
    alphas: np.ndarray = field(default_factory=default_alphas)
    nlambda: int = 100
    lambda_min_ratio: float | None = None  # None: 1e-4 if N > p else 1e-2
    k_folds: int = 10
    seed: int = 0
    standardize: bool = True
    family: Family | None = None  # None: take the dataset's family
    solver: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        alphas = np.array(self.alphas, dtype=float).ravel()
        if alphas.size == 0 or np.any(alphas < 0) or np.any(alphas > 1) or np.any(np.diff(alphas) <= 0):
            raise InvalidArgumentError("alphas must be non-empty, sorted, unique and inside [0, 1]")
        alphas.setflags(write=False)
        object.__setattr__(self, "alphas", alphas)
        if self.family is not None:
            object.__setattr__(self, "family", Family(self.family))
        if self.nlambda < 1 or self.k_folds < 2:
            raise InvalidArgumentError("need nlambda >= 1 and k_folds >= 2")

    def __eq__(self, other):
        if not isinstance(other, SearchConfig):
            return NotImplemented
        return (np.array_equal(self.alphas, other.alphas) and self.nlambda == other.nlambda
                and self.lambda_min_ratio == other.lambda_min_ratio and self.k_folds == other.k_folds
                and self.seed == other.seed and self.standardize == other.standardize
                and self.family == other.family and self.solver == other.solver)

    __hash__ = None

    def with_seed(self, seed: int) -> "SearchConfig":
        return SearchConfig(self.alphas, self.nlambda, self.lambda_min_ratio, self.k_folds, seed,
                            self.standardize, self.family, self.solver)


@dataclass(frozen=True)
class CvRecord:
    nzero: int
    l_index: int  # 1-based position of the alpha curve, ascending alpha
    lam: float
    cvm: float
    alpha: float
    cvsd: float

    def sort_key(self):
        # lower cvm first; ties prefer larger lambda, then smaller alpha
        return (self.cvm, -self.lam, self.alpha)


@dataclass(frozen=True, eq=False)
class SearchResult:
    config: SearchConfig
    lambdas: np.ndarray
    folds: FoldAssignment
    curves: tuple
    full_fits: tuple
    summary: tuple
    data: Dataset | None = None
    working: Dataset | None = None
    stats: StandardizationStats | None = None

    def __eq__(self, other):
        if not isinstance(other, SearchResult):
            return NotImplemented
        return (self.config == other.config and np.array_equal(self.lambdas, other.lambdas)
                and self.folds == other.folds and self.curves == other.curves
                and self.summary == other.summary)

    __hash__ = None

    @property
    def alphas(self) -> np.ndarray:
        return np.array([c.alpha for c in self.curves])


def _annotate(exc: Exception, alpha: float) -> Exception:
    try:
        new = type(exc)(f"alpha={alpha:g}: {exc}")
    except Exception:
        return exc
    new.__cause__ = exc
    return new


def _full_paths(working, stats, alphas, lambdas, cfg, pool):
    def run(a):
        try:
            return fit_standardized_path(working, stats, a, lambdas, cfg)
        except Exception as exc:
            raise _annotate(exc, a)
    return tuple(pool.map(run, alphas))


def _records(curves) -> tuple:
    rows = []
    for idx, curve in enumerate(curves, start=1):
        for k, lam in enumerate(curve.lambdas):
            rows.append(CvRecord(int(curve.nzero[k]), idx, float(lam), float(curve.cvm[k]),
                                 float(curve.alpha), float(curve.cvsd[k])))
    return tuple(rows)


def assemble(config: SearchConfig, lambdas, folds, curves, full_fits=(), data=None,
             working=None, stats=None) -> SearchResult:
    """Build a SearchResult from precomputed curves (all on the one lambda grid)."""
    lambdas = np.asarray(lambdas, dtype=float)
    for c in curves:
        if not np.array_equal(c.lambdas, lambdas):
            raise InvalidArgumentError("every curve must use the shared lambda grid")
    curves = tuple(CvCurve(c.alpha, lambdas, c.cvm, c.cvsd, c.nzero, c.fold_means) for c in curves)
    return SearchResult(config, lambdas, folds, curves, tuple(full_fits), _records(curves), data, working, stats)


def search(data: Dataset, config: SearchConfig | None = None, threads: int = 1,
           full_fits: tuple | None = None) -> SearchResult:
    """Cross-validate every alpha on one shared lambda grid with one fold assignment.

    ``threads`` only changes wall time; results are identical for any value.
    ``full_fits`` lets callers reuse full-data paths computed for the same
    data and config (they do not depend on the seed).
    """
    config = config or SearchConfig()
    if config.family is not None and config.family is not data.family:
        data = Dataset(data.x, data.y, data.column_names, config.family)
    working, stats = standardize(data, scale=config.standardize)
    ratio = config.lambda_min_ratio
    if ratio is None:
        ratio = default_lambda_min_ratio(data.n, data.p)
    if config.nlambda == 1:
        lambdas = build_shared_grid(working, config.alphas, 2, ratio)[:1]
    else:
        lambdas = build_shared_grid(working, config.alphas, config.nlambda, ratio)
    strata = data.y if data.family is Family.BINOMIAL else None
    folds = assign_folds(data.n, config.k_folds, config.seed, strata)
    cfg = config.solver
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        if full_fits is None:
            full_fits = _full_paths(working, stats, config.alphas, lambdas, cfg, pool)

        def run(a):
            try:
                return fold_losses(data, a, lambdas, folds, cfg, config.standardize)
            except Exception as exc:
                raise _annotate(exc, a)
        fold_means = list(pool.map(run, config.alphas))
    curves = []
    for a, fm, fit in zip(config.alphas, fold_means, full_fits):
        cvm, cvsd = summarize_folds(fm)
        curves.append(CvCurve(float(a), lambdas, cvm, cvsd, fit.nzero, fm))
    return SearchResult(config, lambdas, folds, tuple(curves), tuple(full_fits), _records(curves),
                        data, working, stats)


def summarize(result: SearchResult) -> list[CvRecord]:
    """All grid points, ordered by l_index then descending lambda."""
    return list(result.summary)


def best_by_nzero(result: SearchResult) -> list[CvRecord]:
    """The minimum-cvm grid point for each distinct nzero, sorted by cvm."""
    best: dict[int, CvRecord] = {}
    for row in result.summary:
        cur = best.get(row.nzero)
        if cur is None or row.sort_key() < cur.sort_key():
            best[row.nzero] = row
    return sorted(best.values(), key=CvRecord.sort_key)


def _argmin(result: SearchResult) -> CvRecord:
    if not result.summary:
        raise InvalidArgumentError("empty search result")
    return min(result.summary, key=CvRecord.sort_key)


def preferable(result: SearchResult) -> tuple[CvRecord, Coefficients]:
    """Global minimum-cvm grid point and its full-data refit on the original scale."""
    rec = _argmin(result)
    if result.working is None:
        raise InvalidArgumentError("search result carries no data to refit on")
    warm = None
    if result.full_fits:
        fit: FitPath = result.full_fits[rec.l_index - 1]
        k = int(np.flatnonzero(fit.lambdas == rec.lam)[0])
        warm = fit.coefficients(k, Basis.STANDARDIZED)
    coef = fit_point(result.working, PenaltyPoint(rec.alpha, rec.lam), warm, result.config.solver)
    return rec, destandardize(coef, result.stats)


@dataclass(frozen=True, eq=False)
class ZSurface:
    """Standard deviations above the global minimum cvm over the alpha x lambda grid."""

    alphas: np.ndarray
    lambdas: np.ndarray
    cvm: np.ndarray
    z: np.ndarray  # len(alphas) x len(lambdas)
    log10z: np.ndarray
    min_index: tuple
    cvm_min: float
    cvsd_at_min: float
    unit_warning: bool = False
    z_floor: float = Z_FLOOR

    @property
    def minimum(self) -> tuple[float, float]:
        i, k = self.min_index
        return float(self.alphas[i]), float(self.lambdas[k])

    def rows(self):
        for i, a in enumerate(self.alphas):
            for k, lam in enumerate(self.lambdas):
                yield float(a), float(lam), float(self.z[i, k]), float(self.log10z[i, k]), (i, k) == self.min_index


def z_surface(result: SearchResult, z_floor: float = Z_FLOOR) -> ZSurface:
    rec = _argmin(result)
    i = rec.l_index - 1
    curve = result.curves[i]
    k = int(np.flatnonzero(curve.lambdas == rec.lam)[0])
    cvm = np.vstack([c.cvm for c in result.curves])
    sd = float(curve.cvsd[k])
    unit_warning = not sd > 0
    if unit_warning:
        warnings.warn("cvsd is zero at the minimum; Z is reported in raw cvm units", stacklevel=2)
        z = cvm - rec.cvm
    else:
        z = (cvm - rec.cvm) / sd
    log10z = np.log10(np.maximum(z, z_floor))
    return ZSurface(result.alphas, np.asarray(result.lambdas), cvm, z, log10z, (i, k), rec.cvm, sd,
                    unit_warning, z_floor)


@dataclass(frozen=True)
class RepSelection:
    rep: int
    seed: int
    alpha: float | None
    lam: float | None
    cvm: float | None
    nzero: int | None
    support: tuple = ()
    error: str | None = None


@dataclass(frozen=True, eq=False)
class SensitivityResult:
    reps: tuple
    column_names: tuple
    selection_frequency: np.ndarray

    @property
    def n_failed(self) -> int:
        return sum(r.error is not None for r in self.reps)


def sensitivity_analysis(data: Dataset, config: SearchConfig | None = None, n_reps: int = 10,
                         seeds=None, threads: int = 1) -> SensitivityResult:
    """Rerun the search under ``n_reps`` fold memberships (seeds ``seed + rep``).

    Reports each repetition's preferable point and, per predictor, the
    fraction of successful repetitions in which it is nonzero there.
    """
    config = config or SearchConfig()
    if n_reps < 2:
        raise InvalidArgumentError("n_reps must be >= 2")
    if seeds is None:
        seeds = [config.seed + r for r in range(n_reps)]
    if len(seeds) != n_reps:
        raise InvalidArgumentError("need one seed per repetition")
    reps = []
    supports = []
    full_fits = None
    for rep, seed in enumerate(seeds):
        try:
            res = search(data, config.with_seed(int(seed)), threads=threads, full_fits=full_fits)
            full_fits = res.full_fits
            rec, coef = preferable(res)
        except Exception as exc:  # a failed repetition is recorded, not fatal
            reps.append(RepSelection(rep, int(seed), None, None, None, None, (), f"{type(exc).__name__}: {exc}"))
            continue
        support = tuple(bool(b) for b in coef.beta != 0.0)
        supports.append(support)
        reps.append(RepSelection(rep, int(seed), rec.alpha, rec.lam, rec.cvm, coef.nzero, support))
    freq = np.mean(np.array(supports, dtype=float), axis=0) if supports else np.full(data.p, np.nan)
    return SensitivityResult(tuple(reps), data.column_names, freq)
