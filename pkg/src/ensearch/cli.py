"""Command-line front end: CSV in, summary tables and SVG diagnostics out.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric or output failure.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import csvio, svgplot
from .data_model import DataError, Family, InvalidArgumentError, NumericFailureError
from .search import (
    SearchConfig,
    best_by_nzero,
    preferable,
    search,
    sensitivity_analysis,
    summarize,
    z_surface,
)

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4

L_INDEX_RULE = "l_index is the 1-based position of the alpha value in ascending order"


def parse_alphas(text: str) -> np.ndarray:
    """``"0.05,0.5,0.95"`` or ``"lo:hi:n"`` (n evenly spaced values, both ends included)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("range form is lo:hi:n")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise ValueError("n must be >= 1")
        return np.linspace(lo, hi, n)
    return np.array([float(v) for v in text.split(",") if v.strip()])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ensearch", description=__doc__.splitlines()[0])
    p.add_argument("--data", required=True, help="CSV file with a header row")
    p.add_argument("--response", required=True, help="name of the response column")
    p.add_argument("--family", choices=[f.value for f in Family], default="gaussian")
    p.add_argument("--alphas", default="0.05:0.95:10", help='comma list or "lo:hi:n"')
    p.add_argument("--nlambda", type=int, default=100)
    p.add_argument("--lambda-min-ratio", type=float, default=None)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-standardize", action="store_true")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--sensitivity", type=int, default=0, metavar="N_REPS",
                   help="also rerun the search under N_REPS fold memberships")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    return p


def _summary_json(result, records) -> dict:
    return {
        "columns": list(csvio.SUMMARY_COLUMNS),
        "l_index_rule": L_INDEX_RULE,
        "alphas": [float(a) for a in result.alphas],
        "lambdas": [float(v) for v in result.lambdas],
        "k_folds": result.folds.k,
        "seed": result.folds.seed,
        "records": [csvio.record_dict(r) for r in records],
    }


def _preferable_json(rec, coef, names, zero_variance) -> dict:
    return {
        "selection": "global minimum cvm; ties prefer larger lambda, then smaller alpha",
        "l_index": rec.l_index,
        "alpha": rec.alpha,
        "lambda": rec.lam,
        "cvm": rec.cvm,
        "cvsd": rec.cvsd,
        "nzero": coef.nzero,
        "converged": coef.converged,
        "clamped": coef.clamped,
        "intercept": coef.intercept,
        "coefficients": {n: float(b) for n, b in zip(names, coef.beta)},
        "zero_variance_columns": [n for n, z in zip(names, zero_variance) if z],
    }


def _write_sensitivity(sens, out: Path, fmt: str):
    rows = []
    for r in sens.reps:
        rows.append({
            "rep": r.rep, "seed": r.seed, "alpha": r.alpha, "lambda": r.lam, "cvm": r.cvm,
            "nzero": r.nzero, "error": r.error,
            "selected": [n for n, s in zip(sens.column_names, r.support) if s],
        })
    freq = {n: float(f) for n, f in zip(sens.column_names, sens.selection_frequency)}
    if fmt == "json":
        csvio.write_json({"reps": rows, "selection_frequency": freq}, out / "sensitivity.json")
        return
    import csv
    with open(out / "sensitivity.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rep", "seed", "alpha", "lambda", "cvm", "nzero", "error", *sens.column_names])
        for r in sens.reps:
            w.writerow([r.rep, r.seed, csvio.fmt(r.alpha) if r.alpha is not None else "",
                        csvio.fmt(r.lam) if r.lam is not None else "",
                        csvio.fmt(r.cvm) if r.cvm is not None else "",
                        "" if r.nzero is None else r.nzero, r.error or "",
                        *[int(s) for s in (r.support or [False] * len(sens.column_names))]])
        w.writerow(["frequency", "", "", "", "", "", "", *[csvio.fmt(float(f)) for f in sens.selection_frequency]])


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        alphas = parse_alphas(args.alphas)
        config = SearchConfig(alphas=alphas, nlambda=args.nlambda, lambda_min_ratio=args.lambda_min_ratio,
                              k_folds=args.folds, seed=args.seed, standardize=not args.no_standardize,
                              family=Family(args.family))
        if args.sensitivity == 1 or args.sensitivity < 0:
            raise ValueError("--sensitivity needs at least 2 repetitions")
    except (ValueError, InvalidArgumentError) as exc:
        parser.print_usage(sys.stderr)
        print(f"ensearch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    out = Path(args.out)
    try:
        data = csvio.load_csv(args.data, args.response, args.family)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = search(data, config, threads=args.threads)
            records = summarize(result)
            rec, coef = preferable(result)
            surface = z_surface(result)
            sens = sensitivity_analysis(data, config, args.sensitivity, threads=args.threads) \
                if args.sensitivity else None
        for w in caught:
            print(f"ensearch: warning: {w.message}", file=sys.stderr)
    except InvalidArgumentError as exc:
        print(f"ensearch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"ensearch: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NumericFailureError, FloatingPointError) as exc:
        print(f"ensearch: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    try:
        out.mkdir(parents=True, exist_ok=True)
        if args.format == "json":
            csvio.write_json(_summary_json(result, records), out / "summary.json")
        else:
            csvio.write_summary_csv(records, out / "summary.csv")
        csvio.write_json(_preferable_json(rec, coef, data.column_names, result.stats.zero_variance),
                         out / "preferable.json")
        svgplot.emit_contour_svg(surface, out / "contour.svg")
        svgplot.emit_nzero_svg(best_by_nzero(result), out / "nzero.svg")
        if sens is not None:
            _write_sensitivity(sens, out, args.format)
    except (OSError, ValueError) as exc:
        print(f"ensearch: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
