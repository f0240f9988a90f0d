"""Elastic net searcher: cross-validated selection of lambda and alpha on a shared lambda grid."""
from .cross_validation import CvCurve, FoldAssignment, assign_folds, cv_path
from .data_model import (
    Basis,
    Coefficients,
    DataError,
    Dataset,
    DegenerateResponseError,
    Family,
    InvalidArgumentError,
    NumericFailureError,
    PenaltyPoint,
    StandardizationStats,
    destandardize,
    objective,
    penalty,
    standardize,
)
from .lambda_grid import build_shared_grid, lambda_max
from .search import (
    CvRecord,
    SearchConfig,
    SearchResult,
    best_by_nzero,
    preferable,
    search,
    sensitivity_analysis,
    summarize,
    z_surface,
)
from .solver import FitPath, SolverConfig, fit_at, fit_binomial_at, fit_path, kkt_check, soft_threshold

__version__ = "0.1.0"
