#!/usr/bin/env python3
"""Scan the power-tower return set for a chosen prime and window, then
fit set descriptors to the observed members.

Usage: python3 scripts/window_scan.py --p 5 --n 700 [--seed 0]
"""

import argparse
import sys

from pdml.experiments import run_example_power_tower
from pdml.setalg import complexity_measure, fit_descriptor


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--n", type=int, default=700)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    doc = run_example_power_tower(p=args.p, N=args.n, seed=args.seed)
    print(f"members on [0, {args.n}]: {doc['members']}")
    print(f"oracle degree {doc['config']['oracleDegree']}, "
          f"worst member bound 2^{doc['worstMemberErrorBoundLog2']:.1f}")
    fits = fit_descriptor(doc["members"], args.p, args.n)
    if not fits:
        print("no descriptor fits the window")
        return 1
    for i, d in enumerate(fits[:5]):
        print(f"fit[{i}] complexity={complexity_measure(d)}: {d.to_json()}")
    return 0 if doc["verdict"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
