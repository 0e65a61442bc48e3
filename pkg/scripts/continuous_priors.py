#!/usr/bin/env python3
"""Monte Carlo comparison of blind and informed rules on continuous priors."""

import argparse
from fractions import Fraction

from envelope import (
    NO_INFORMATION,
    Always,
    Blind,
    GeometricScaled,
    LogNormal,
    MeanOnly,
    MeanThreshold,
    MonotoneDecreasing,
    Never,
    Reciprocal,
    SimConfig,
    UniformContinuous,
    run_sim,
)
from envelope.model import sampler_mean
from envelope.strategy import strategy_name

SAMPLERS = {
    "uniform(1,3)": UniformContinuous(1.0, 3.0),
    "lognormal(0,0.5)": LogNormal(0.0, 0.5),
    "geometric(0.3)x2": GeometricScaled(0.3, 2.0),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    for label, sampler in SAMPLERS.items():
        mean_y = sampler_mean(sampler)
        print(f"\n{label}: E[Y] = {mean_y:.4f}, 3/2 E[Y] = {1.5 * mean_y:.4f}")
        rules = [
            (Never(), NO_INFORMATION),
            (Always(), NO_INFORMATION),
            (Blind(Fraction(1, 2)), NO_INFORMATION),
            (MeanThreshold(), MeanOnly(Fraction(mean_y).limit_denominator(10**9))),
            (MonotoneDecreasing(Reciprocal()), NO_INFORMATION),
        ]
        for spec, k in rules:
            r = run_sim(SimConfig(args.trials, args.seed, sampler, spec, k), workers=args.workers)
            print(f"  {strategy_name(spec):<34} {r.mean:10.4f} +- {1.96 * r.stderr:.4f}")


if __name__ == "__main__":
    main()
