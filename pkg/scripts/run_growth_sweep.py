#!/usr/bin/env python3
"""Measure how the covering number k(p, n) grows with p.

Sweeps primes in a range, pairing each p with the largest odd divisor n of
p - 1 that clears the n > p**epsilon hypothesis, then fits ln k against
ln p.  A slope well below 1 is the sublinear-growth signal; nothing about
the non-effective constant is (or can be) asserted.

Example:

    python scripts/run_growth_sweep.py --p-min 1000 --p-max 100000 \
        --epsilon 0.3333 --out growth.csv --workers 8
"""

import argparse
import sys
import time

from powres import SweepConfig, fit_exponent, run_sweep, write_records
from powres.errors import InsufficientData


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p-min", type=int, default=1000)
    parser.add_argument("--p-max", type=int, default=100000)
    parser.add_argument("--epsilon", type=float, default=1 / 3,
                        help="keep only cases with n > p**epsilon")
    parser.add_argument("--policy", default="largest_odd_divisor",
                        choices=("all_odd_divisors", "largest_odd_divisor"))
    parser.add_argument("--with-expsums", action="store_true",
                        help="also record max|S|/|H| and the empirical "
                             "exponent per case (slower)")
    parser.add_argument("--workers", type=int, default=8)
    parser.add_argument("--out", default="growth.csv")
    parser.add_argument("--format", default="csv", choices=("csv", "jsonl"))
    args = parser.parse_args(argv)

    config = SweepConfig(p_min=args.p_min, p_max=args.p_max,
                         epsilon=args.epsilon, n_policy=args.policy,
                         with_expsums=args.with_expsums, workers=args.workers)
    start = time.perf_counter()
    records = run_sweep(config)
    elapsed = time.perf_counter() - start
    write_records(records, args.out, args.format)

    completed = [r for r in records if r.k is not None]
    print(f"{len(records)} cases ({len(records) - len(completed)} skipped) "
          f"in {elapsed:.1f}s -> {args.out}")
    try:
        fit = fit_exponent(records)
    except InsufficientData as exc:
        print(f"no fit: {exc}", file=sys.stderr)
        return 1
    print(f"ln k ~ {fit.slope:.4f} * ln p + {fit.intercept:.3f} "
          f"(r^2 = {fit.r_squared:.4f}, {fit.n_points} points)")
    norms = [r.normalized for r in completed]
    print(f"normalized k*2n/(p-1) in [{min(norms):.3f}, {max(norms):.3f}]")
    if args.with_expsums:
        ratios = [r.max_expsum_ratio for r in completed
                  if r.max_expsum_ratio is not None]
        if ratios:
            print(f"max|S|/|H| in [{min(ratios):.4f}, {max(ratios):.4f}]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
