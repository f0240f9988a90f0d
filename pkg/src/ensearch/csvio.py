"""CSV input and JSON/CSV serialization of search outputs."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .data_model import DataError, Dataset, Family
from .search import CvRecord

SUMMARY_COLUMNS = ("nzero", "l_index", "lambda", "cvm", "alpha", "cvsd")


def _parse_cell(text: str, row: int, column: str) -> float:
    try:
        value = float(text.strip())
    except ValueError:
        raise DataError(f"row {row}, column {column!r}: non-numeric value {text!r}") from None
    if not math.isfinite(value):
        raise DataError(f"row {row}, column {column!r}: non-finite value {text!r}")
    return value


def load_csv(path, response: str, family: Family | str = Family.GAUSSIAN) -> Dataset:
    """Read a header-first numeric CSV; ``response`` is y and every other column a predictor.

    Rows are numbered as in the file (header is row 1). Missing or
    non-numeric cells raise ``DataError``; nothing is silently dropped.
    """
    family = Family(family)
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise DataError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if response not in header:
        raise DataError(f"response column {response!r} not found in header")
    body = [(lineno, r) for lineno, r in enumerate(rows[1:], start=2) if any(cell.strip() for cell in r)]
    if not body:
        raise DataError("no observations")
    values = np.empty((len(body), len(header)))
    for i, (lineno, r) in enumerate(body):
        if len(r) != len(header):
            raise DataError(f"row {lineno}: expected {len(header)} cells, found {len(r)}")
        for j, cell in enumerate(r):
            values[i, j] = _parse_cell(cell, lineno, header[j])
    yj = header.index(response)
    y = values[:, yj]
    if family is Family.BINOMIAL:
        bad = np.flatnonzero((y != 0.0) & (y != 1.0))
        if bad.size:
            raise DataError(f"row {body[bad[0]][0]}, column {response!r}: binomial response must be 0 or 1, "
                            f"got {y[bad[0]]!r}")
    names = tuple(h for j, h in enumerate(header) if j != yj)
    if not names:
        raise DataError("no predictor columns")
    x = np.delete(values, yj, axis=1)
    return Dataset(x, y, names, family)


def fmt(value) -> str:
    """Shortest round-trip decimal for floats; plain str for everything else."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def record_dict(rec: CvRecord) -> dict:
    d = asdict(rec)
    return {"nzero": d["nzero"], "l_index": d["l_index"], "lambda": d["lam"], "cvm": d["cvm"],
            "alpha": d["alpha"], "cvsd": d["cvsd"]}


def write_summary_csv(records, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        for rec in records:
            d = record_dict(rec)
            w.writerow([fmt(d[c]) for c in SUMMARY_COLUMNS])


def read_summary_csv(path) -> list[CvRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        return [CvRecord(int(r["nzero"]), int(r["l_index"]), float(r["lambda"]), float(r["cvm"]),
                         float(r["alpha"]), float(r["cvsd"])) for r in reader]


def write_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, allow_nan=False)
        fh.write("\n")


def read_summary_json(path) -> list[CvRecord]:
    with open(path, encoding="utf-8") as fh:
        rows = json.load(fh)["records"]
    return [CvRecord(r["nzero"], r["l_index"], r["lambda"], r["cvm"], r["alpha"], r["cvsd"]) for r in rows]
