#!/usr/bin/env python3
"""Mean absolute error of the clone average vs number of clones.

The error should fall like 1/sqrt(n): quadrupling the clones halves it.
"""

import argparse
import statistics
from fractions import Fraction

from envelope import run_clones


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--y", default="100")
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 400, 1600, 6400, 25600])
    args = ap.parse_args()

    y = Fraction(args.y)
    target = 1.5 * float(y)
    print(f"{'clones':>8}  {'mean |err|':>12}  {'err*sqrt(n)':>12}")
    for n in args.sizes:
        err = statistics.mean(abs(run_clones(y, n, s).mean_x - target) for s in range(args.seeds))
        print(f"{n:>8}  {err:>12.5f}  {err * n ** 0.5:>12.4f}")


if __name__ == "__main__":
    main()
