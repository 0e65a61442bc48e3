from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ImpossibleObservation, ValidationError
from .model import FiniteBasePrior


@dataclass(frozen=True)
class Posterior:
    p_lower: Fraction  # we hold y, the other envelope has 2y
    p_higher: Fraction  # we hold 2y

    def __post_init__(self):
        if self.p_lower + self.p_higher != 1:
            raise ValidationError("posterior must be normalized")


def posterior(prior: FiniteBasePrior, x: Fraction) -> Posterior:
    """Which envelope are we holding, given we see ``x``?

    Odds are f1(x) : f1(x/2), the fair pick cancels.
    """
    if x <= 0:
        raise ValidationError("observed amount must be positive")
    w_lower = prior.f1(x)
    w_higher = prior.f1(x / 2)
    total = w_lower + w_higher
    if total == 0:
        raise ImpossibleObservation(f"x = {x} cannot arise under this prior")
    return Posterior(w_lower / total, w_higher / total)


def conditional_gain(prior: FiniteBasePrior, x: Fraction) -> Fraction:
    """Expected change in payoff from switching after seeing ``x``."""
    post = posterior(prior, x)
    return post.p_lower * x - post.p_higher * (x / 2)
