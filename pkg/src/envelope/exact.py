"""Exact expected payoffs by enumerating every (base amount, pick) outcome."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .model import (
    CLOSED,
    EnvelopeMode,
    FiniteBasePrior,
    Open,
    format_decimal,
    format_rational,
    prior_mean,
    rational,
)
from .posterior import Posterior, conditional_gain, posterior
from .strategy import (
    NO_INFORMATION,
    PriorKnowledge,
    StrategySpec,
    check_requirements,
    switch_prob,
    switch_probability,
)

__all__ = [
    "ExactReport",
    "Posterior",
    "conditional_gain",
    "correct_open_value",
    "decompose_correction",
    "exact_value",
    "naive_value",
    "posterior",
    "switch_profile",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ExactReport:
    e_y: Fraction
    e_x: Fraction
    e_v: Fraction
    baseline: Fraction
    correction: Fraction

    def __post_init__(self):
        if self.e_v != self.baseline + self.correction:
            raise ValidationError("report is inconsistent: e_v != baseline + correction")

    def to_dict(self) -> dict:
        fields = ("e_y", "e_x", "e_v", "baseline", "correction")
        return {
            **{f: format_rational(getattr(self, f)) for f in fields},
            "approx": {f: format_decimal(getattr(self, f)) for f in fields},
        }

    @classmethod
    def from_dict(cls, d: dict) -> ExactReport:
        return cls(*(rational(d[f]) for f in ("e_y", "e_x", "e_v", "baseline", "correction")))


def switch_profile(
    prior: FiniteBasePrior,
    spec: StrategySpec,
    knowledge: PriorKnowledge = NO_INFORMATION,
    mode: EnvelopeMode = EnvelopeMode.OPEN,
) -> dict[Fraction, Fraction]:
    """Switch probability at every observable amount, ascending."""
    mode = EnvelopeMode(mode)
    check_requirements(spec, mode, knowledge)
    if mode is EnvelopeMode.CLOSED:
        s = switch_probability(spec, CLOSED, knowledge)
        return {x: s for x in prior.observable()}
    return {x: switch_probability(spec, Open(x), knowledge) for x in prior.observable()}


def exact_value(
    prior: FiniteBasePrior,
    spec: StrategySpec,
    knowledge: PriorKnowledge = NO_INFORMATION,
    mode: EnvelopeMode = EnvelopeMode.OPEN,
) -> ExactReport:
    """Enumerate all four-way outcomes per atom and total the payoffs.

    Each atom y contributes f1(y)/2 for holding y (other is 2y) and f1(y)/2
    for holding 2y (other is y). Summation runs in ascending atom order.
    """
    s = switch_profile(prior, spec, knowledge, mode)
    e_x = Fraction(0)
    e_v = Fraction(0)
    for y, f in prior.atoms:
        w = f * HALF
        for x, other in ((y, 2 * y), (2 * y, y)):
            e_x += w * x
            e_v += w * ((1 - s[x]) * x + s[x] * other)
    e_y = prior_mean(prior)
    baseline = Fraction(3, 2) * e_y
    return ExactReport(e_y, e_x, e_v, baseline, e_v - baseline)


def decompose_correction(
    prior: FiniteBasePrior,
    spec: StrategySpec,
    knowledge: PriorKnowledge = NO_INFORMATION,
    mode: EnvelopeMode = EnvelopeMode.OPEN,
) -> Fraction:
    """Closed form for e_v - 3/2 E[Y]: half of sum f1(y) y (s(y) - s(2y)).

    Zero whenever s(y) == s(2y) on the support, which is what breaks for
    rules that react to the observed amount.
    """
    s = switch_profile(prior, spec, knowledge, mode)
    return HALF * sum((f * y * (s[y] - s[2 * y]) for y, f in prior.atoms), Fraction(0))


def naive_value(x: Fraction, p_switch: Fraction) -> Fraction:
    """The fallacious value: treat the other envelope as x/2 or 2x at even odds."""
    if x <= 0:
        raise ValidationError("x must be positive")
    p_switch = switch_prob(p_switch)
    return (1 - p_switch) * x + p_switch * Fraction(5, 4) * x


def correct_open_value(x: Fraction, p_switch: Fraction, e_y: Fraction) -> Fraction:
    if x <= 0 or e_y <= 0:
        raise ValidationError("x and e_y must be positive")
    p_switch = switch_prob(p_switch)
    return (1 - p_switch) * x + p_switch * Fraction(3, 2) * e_y
