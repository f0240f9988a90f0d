"""Fold-membership sensitivity across several tbi-shaped datasets.

Prints, per dataset, how often each predictor is selected at the minimum-cvm
point over repeated fold draws. True predictors are pcode1, pcode4, ncode2.

    python scripts/sensitivity_sweep.py [--datasets 6] [--reps 10]
"""
import argparse

import numpy as np

from ensearch.experiments import TRUE_IDX, sensitivity_experiment
from ensearch.synthetic import TBI_COLUMNS


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--datasets", type=int, default=6)
    ap.add_argument("--reps", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0, help="first fold seed")
    ap.add_argument("--threads", type=int, default=1)
    a = ap.parse_args()
    print("data " + " ".join(f"{c:>6}" for c in TBI_COLUMNS) + "  true_min noise_max")
    for ds in range(a.datasets):
        s = sensitivity_experiment(ds, a.reps, a.seed, threads=a.threads)
        f = s.selection_frequency
        noise = np.delete(f, list(TRUE_IDX))
        print(f"{ds:>4} " + " ".join(f"{v:6.1f}" for v in f)
              + f"  {f[list(TRUE_IDX)].min():8.1f} {noise.max():9.1f}", flush=True)


if __name__ == "__main__":
    main()
