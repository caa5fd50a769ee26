#!/usr/bin/env python3
"""Survey dynamical degrees of random integer exponent matrices.

For each sampled nonsingular matrix: the degree sequence, the ratio
sequence, the product identity, and the root/gap conditions.

Usage: python3 scripts/spectral_survey.py [--count 20] [--size 3] [--seed 0]
"""

import argparse
import random
import sys

import sympy

from pdml import spectral


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--size", type=int, default=3)
    ap.add_argument("--entry-bound", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    done = 0
    while done < args.count:
        n = rng.randrange(1, args.size + 1)
        A = sympy.Matrix(
            n,
            n,
            lambda i, j: rng.randrange(-args.entry_bound, args.entry_bound + 1),
        )
        if A.det(method="berkowitz") == 0:
            continue
        done += 1
        lams = spectral.dynamical_degrees_monomial(A)
        mus = spectral.lyapunov_exponents(lams)
        prod = mus[0]
        for m in mus[1:]:
            prod = prod * m
        assert prod.compare(
            spectral.AlgebraicNumber.from_rational(abs(A.det()))
        ) == 0
        rep = spectral.hyperbolicity_report(mus, abs(int(A.det())))
        print(f"A = {A.tolist()}")
        print(f"  lambda = {[str(l.expr) for l in lams]}")
        print(f"  mu     = {[str(m.expr) for m in mus]}")
        print(f"  {rep}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
