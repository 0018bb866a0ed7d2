"""Random reflection-symmetric matrices: every eigenvector is even or odd.

Runs through the lab layer so the output is the same CSV the command line
writes.
"""

import sys

from pointerlab.lab import Experiment, ExperimentConfig, check, run, to_csv

for dim in (5, 7, 9):
    res = run(ExperimentConfig(Experiment.PARITY_CENSUS, {"dim": dim, "trials": 200}, seed=2024))
    s = res.summary
    print(f"dim {dim}: {s['passed_trials']}/{s['non_degenerate_trials']} trials with "
          f"({s['expected_plus']} even, {s['expected_minus']} odd) eigenvectors")
    for name, ok, _ in check(res):
        print(f"  {'ok ' if ok else 'BAD'} {name}")

res = run(ExperimentConfig(Experiment.PARITY_CENSUS, {"dim": 5, "trials": 3}, seed=2024))
sys.stdout.write("\n" + to_csv(res))
