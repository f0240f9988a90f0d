"""Write the bundled tbi-shaped CSV: 12 binary code indicators and a binary outcome.

    python scripts/make_synthetic_tbi.py [--n 1000] [--seed 0] [--out data/tbi_synthetic.csv]
"""
import argparse
import csv
from pathlib import Path

from ensearch.synthetic import tbi_like

RESPONSE = "injury"


def write(path, n=1000, seed=0):
    data = tbi_like(n, seed=seed)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([RESPONSE, *data.column_names])
        for yi, row in zip(data.y, data.x):
            w.writerow([int(yi), *(int(v) for v in row)])
    return data


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "data" / "tbi_synthetic.csv"))
    a = ap.parse_args()
    d = write(a.out, a.n, a.seed)
    print(f"wrote {a.out}: {d.n} rows, {d.p} predictors, {int(d.y.sum())} positives")
