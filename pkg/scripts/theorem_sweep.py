#!/usr/bin/env python3
"""Sweep random finite priors and tabulate the correction term per strategy.

Oblivious rules should always show zero; rules that look at the envelope
generally do not.

    python scripts/theorem_sweep.py --priors 200 --seed 1 > sweep.csv
"""

import argparse
import csv
import random
import sys
from fractions import Fraction

from envelope import (
    NO_INFORMATION,
    Always,
    BayesArgmax,
    BayesMixed,
    Blind,
    Bounds,
    BoundsRule,
    ExponentialDecay,
    FiniteBasePrior,
    FullPrior,
    MeanThreshold,
    MonotoneDecreasing,
    Never,
    Reciprocal,
    exact_value,
)
from envelope.model import format_rational as q
from envelope.strategy import strategy_name


def random_prior(rng, max_support):
    k = rng.randint(1, max_support)
    values = rng.sample(range(1, 65), k)
    weights = [rng.randint(1, 20) for _ in values]
    total = sum(weights)
    return FiniteBasePrior.from_pairs((v, Fraction(w, total)) for v, w in zip(values, weights))


def strategies(prior):
    full = FullPrior(prior)
    return [
        (Never(), NO_INFORMATION),
        (Always(), NO_INFORMATION),
        (Blind(Fraction(1, 2)), NO_INFORMATION),
        (MeanThreshold(), full),
        (BoundsRule(Fraction(1, 2)), Bounds(prior.values[0], prior.values[-1])),
        (BayesArgmax(), full),
        (BayesMixed(), full),
        (MonotoneDecreasing(Reciprocal()), NO_INFORMATION),
        (MonotoneDecreasing(ExponentialDecay(0.05)), NO_INFORMATION),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--priors", type=int, default=100)
    ap.add_argument("--max-support", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["prior", "strategy", "e_y", "e_v", "baseline", "correction", "relative_gain"])
    for i in range(args.priors):
        prior = random_prior(rng, args.max_support)
        for spec, k in strategies(prior):
            rep = exact_value(prior, spec, k)
            out.writerow(
                [i, strategy_name(spec), q(rep.e_y), q(rep.e_v), q(rep.baseline), q(rep.correction), float(rep.correction / rep.baseline)]
            )


if __name__ == "__main__":
    main()
