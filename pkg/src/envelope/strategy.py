"""Switching rules.

A strategy maps (observation, what the player knows about the base prior) to
an exact switch probability. Oblivious rules ignore the observation; the rest
need an open envelope and sometimes prior knowledge, and raise
:class:`MissingObservation` / :class:`MissingPrior` when those are absent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Union

from .errors import MissingObservation, MissingPrior, ValidationError
from .model import (
    Closed,
    EnvelopeMode,
    FiniteBasePrior,
    Observation,
    Open,
    format_rational,
    prior_mean,
    rational,
)
from .posterior import conditional_gain, posterior

# Real-valued switch probabilities are rounded to this many decimal places
# before entering exact arithmetic.
REAL_PROB_PLACES = 12


def switch_prob(value) -> Fraction:
    p = rational(value)
    if not 0 <= p <= 1:
        raise ValidationError(f"switch probability must lie in [0, 1], got {p}")
    return p


def real_to_prob(g: float) -> Fraction:
    q = Decimal(g).quantize(Decimal(1).scaleb(-REAL_PROB_PLACES))
    return Fraction(q)


# -- prior knowledge ---------------------------------------------------------


@dataclass(frozen=True)
class NoInformation:
    pass


@dataclass(frozen=True)
class MeanOnly:
    mean_y: Fraction

    def __post_init__(self):
        if self.mean_y <= 0:
            raise ValidationError("mean_y must be positive")


@dataclass(frozen=True)
class Bounds:
    y_min: Optional[Fraction] = None
    y_max: Optional[Fraction] = None

    def __post_init__(self):
        for b in (self.y_min, self.y_max):
            if b is not None and b <= 0:
                raise ValidationError("bounds must be positive")
        if self.y_min is not None and self.y_max is not None and self.y_min > self.y_max:
            raise ValidationError("y_min must not exceed y_max")


@dataclass(frozen=True)
class FullPrior:
    prior: FiniteBasePrior


PriorKnowledge = Union[NoInformation, MeanOnly, Bounds, FullPrior]
NO_INFORMATION = NoInformation()


# -- strategies --------------------------------------------------------------


@dataclass(frozen=True)
class Never:
    pass


@dataclass(frozen=True)
class Always:
    pass


@dataclass(frozen=True)
class Blind:
    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", switch_prob(self.p))


@dataclass(frozen=True)
class MeanThreshold:
    pass


@dataclass(frozen=True)
class BoundsRule:
    fallback: Fraction

    def __post_init__(self):
        object.__setattr__(self, "fallback", switch_prob(self.fallback))


@dataclass(frozen=True)
class BayesArgmax:
    pass


@dataclass(frozen=True)
class BayesMixed:
    pass


@dataclass(frozen=True)
class ExponentialDecay:
    rate: float

    def __post_init__(self):
        if not (math.isfinite(self.rate) and self.rate > 0):
            raise ValidationError("decay rate must be positive")


@dataclass(frozen=True)
class Reciprocal:
    pass


@dataclass(frozen=True)
class MonotoneDecreasing:
    kind: Union[ExponentialDecay, Reciprocal]


StrategySpec = Union[
    Never, Always, Blind, MeanThreshold, BoundsRule, BayesArgmax, BayesMixed, MonotoneDecreasing
]

OBLIVIOUS = (Never, Always, Blind)


def is_oblivious(spec: StrategySpec) -> bool:
    return isinstance(spec, OBLIVIOUS)


def strategy_name(spec: StrategySpec) -> str:
    """Stable human-readable label, used for sorting comparison tables."""
    match spec:
        case Never():
            return "never"
        case Always():
            return "always"
        case Blind(p):
            return f"blind({format_rational(p)})"
        case MeanThreshold():
            return "mean_threshold"
        case BoundsRule(fallback):
            return f"bounds_rule({format_rational(fallback)})"
        case BayesArgmax():
            return "bayes_argmax"
        case BayesMixed():
            return "bayes_mixed"
        case MonotoneDecreasing(ExponentialDecay(rate)):
            return f"monotone_decreasing(exp,{rate!r})"
        case MonotoneDecreasing(Reciprocal()):
            return "monotone_decreasing(reciprocal)"
    raise TypeError(f"unknown strategy {spec!r}")


def _known_mean(name: str, prior: PriorKnowledge) -> Fraction:
    match prior:
        case MeanOnly(mean_y):
            return mean_y
        case FullPrior(p):
            return prior_mean(p)
    raise MissingPrior(f"{name} needs mean_only or full_prior knowledge")


def _full_prior(name: str, prior: PriorKnowledge) -> FiniteBasePrior:
    if isinstance(prior, FullPrior):
        return prior.prior
    raise MissingPrior(f"{name} needs full_prior knowledge")


def check_requirements(spec: StrategySpec, mode: EnvelopeMode, prior: PriorKnowledge) -> None:
    """Fail fast if ``spec`` can never be evaluated in this setting."""
    if is_oblivious(spec):
        return
    name = strategy_name(spec)
    if EnvelopeMode(mode) is not EnvelopeMode.OPEN:
        raise MissingObservation(f"{name} needs an open envelope")
    match spec:
        case MeanThreshold():
            _known_mean(name, prior)
        case BoundsRule():
            if not isinstance(prior, Bounds):
                raise MissingPrior(f"{name} needs bounds knowledge")
        case BayesArgmax() | BayesMixed():
            _full_prior(name, prior)


def _decreasing(kind, x: Fraction) -> Fraction:
    match kind:
        case Reciprocal():
            # exactly representable, no rounding needed
            return 1 / (1 + x)
        case ExponentialDecay(rate):
            return real_to_prob(math.exp(-rate * float(x)))
    raise TypeError(f"unknown decreasing kind {kind!r}")


def switch_probability(spec: StrategySpec, obs: Observation, prior: PriorKnowledge) -> Fraction:
    match spec:
        case Never():
            return Fraction(0)
        case Always():
            return Fraction(1)
        case Blind(p):
            return p

    name = strategy_name(spec)
    if not isinstance(obs, Open):
        raise MissingObservation(f"{name} needs an open envelope")
    x = obs.x

    match spec:
        case MeanThreshold():
            # strict: a tie keeps the envelope
            return Fraction(int(x < Fraction(3, 2) * _known_mean(name, prior)))
        case BoundsRule(fallback):
            if not isinstance(prior, Bounds):
                raise MissingPrior(f"{name} needs bounds knowledge")
            if prior.y_max is not None and x > prior.y_max:
                return Fraction(0)
            if prior.y_min is not None and x < 2 * prior.y_min:
                return Fraction(1)
            return fallback
        case BayesArgmax():
            gain = conditional_gain(_full_prior(name, prior), x)
            return Fraction(int(gain > 0))
        case BayesMixed():
            return posterior(_full_prior(name, prior), x).p_lower
        case MonotoneDecreasing(kind):
            return _decreasing(kind, x)
    raise TypeError(f"unknown strategy {spec!r}")
