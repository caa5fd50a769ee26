#!/usr/bin/env python3
"""Run every preset experiment and write its JSON report.

Usage: python3 scripts/run_all_presets.py [--out-dir reports] [--seed 0]
"""

import argparse
import os
import sys
import time

from pdml.experiments import (
    run_coefficient_obstruction,
    run_curve_sum_witnesses,
    run_example_power_tower,
    run_frobenius_twist_equality,
    run_split_experiment,
    write_report,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)
    runs = [
        ("power-tower", lambda: run_example_power_tower(seed=args.seed)),
        ("frobenius-twist", lambda: run_frobenius_twist_equality(seed=args.seed)),
        ("curve-sum", lambda: run_curve_sum_witnesses(seed=args.seed)),
        ("obstruction", lambda: run_coefficient_obstruction()),
        ("split", lambda: run_split_experiment(seed=args.seed)),
    ]
    failures = 0
    for name, fn in runs:
        t0 = time.monotonic()
        doc = fn()
        path = os.path.join(args.out_dir, f"{name}.json")
        write_report(path, doc)
        verdict = doc.get("verdict", "?")
        ok = verdict in ("pass", "contradiction-exhibited")
        failures += 0 if ok else 1
        print(
            f"{name:16s} verdict={verdict:24s} "
            f"{time.monotonic() - t0:6.2f}s -> {path}"
        )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
