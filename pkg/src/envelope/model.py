"""Money values, base priors, and world-state sampling for the two-envelope game.

Amounts are ``fractions.Fraction`` instances: always in lowest terms with a
positive denominator, and closed under the exact arithmetic we need. Monte
Carlo code converts to float only at the sampling boundary.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

import numpy as np

from .errors import EmptyPrior, ValidationError

Amount = Fraction
RationalLike = Union[int, str, Fraction]


def rational(value: RationalLike) -> Fraction:
    """Parse an exact rational from an int, Fraction, or "num/den" string.

    Floats are rejected: they would silently smuggle binary rounding into
    values that are supposed to be exact.
    """
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, float):
        raise ValidationError(f"floats are not exact; pass {value!r} as a string")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {value!r}") from exc
    raise ValidationError(f"not a rational: {value!r}")


def amount(value: RationalLike) -> Fraction:
    """Like :func:`rational` but requires a strictly positive money value."""
    a = rational(value)
    if a <= 0:
        raise ValidationError(f"amount must be positive, got {a}")
    return a


def format_rational(q: Fraction) -> str:
    """Render as "num/den", always with an explicit denominator."""
    return f"{q.numerator}/{q.denominator}"


def format_decimal(q: Fraction, places: int = 6) -> str:
    # round-half-even on the exact value, so no float detour
    scaled = round(q * 10**places)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


class EnvelopePick(enum.Enum):
    LOWER = 0  # chosen envelope holds y
    HIGHER = 1  # chosen envelope holds 2y


@dataclass(frozen=True)
class WorldState:
    y: Fraction
    pick: EnvelopePick

    def __post_init__(self):
        if self.y <= 0:
            raise ValidationError("base amount must be positive")


def world_values(w: WorldState) -> tuple[Fraction, Fraction]:
    """Return (observed, other) amounts for a realized world."""
    if w.pick is EnvelopePick.LOWER:
        return w.y, 2 * w.y
    return 2 * w.y, w.y


@dataclass(frozen=True)
class FiniteBasePrior:
    """Finite distribution of the base amount.

    Atoms are (value, prob) pairs, stored sorted by value. Construction
    validates exactness; use :meth:`from_pairs` for unsorted input.
    """

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        if not self.atoms:
            raise EmptyPrior("prior has no atoms")
        values = [v for v, _ in self.atoms]
        for v, p in self.atoms:
            if not isinstance(v, Fraction) or not isinstance(p, Fraction):
                raise ValidationError("prior atoms must be Fractions")
            if v <= 0:
                raise ValidationError(f"prior values must be positive, got {v}")
            if not 0 < p <= 1:
                raise ValidationError(f"prior probabilities must lie in (0, 1], got {p}")
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ValidationError("prior values must be distinct and sorted ascending")
        if sum(p for _, p in self.atoms) != 1:
            raise ValidationError("prior probabilities must sum to 1")
        object.__setattr__(self, "_lookup", dict(self.atoms))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[RationalLike, RationalLike]]) -> FiniteBasePrior:
        atoms = [(amount(v), rational(p)) for v, p in pairs]
        if len({v for v, _ in atoms}) != len(atoms):
            raise ValidationError("prior values must be distinct")
        return cls(tuple(sorted(atoms)))

    @classmethod
    def from_mapping(cls, mapping: dict) -> FiniteBasePrior:
        return cls.from_pairs(mapping.items())

    def f1(self, a: Fraction) -> Fraction:
        """Probability of base amount ``a``; exactly 0 off the support."""
        return self._lookup.get(a, Fraction(0))

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(v for v, _ in self.atoms)

    @property
    def probs(self) -> tuple[Fraction, ...]:
        return tuple(p for _, p in self.atoms)

    def observable(self) -> list[Fraction]:
        """Every amount that can show up in the chosen envelope."""
        return sorted(set(self.values) | {2 * v for v in self.values})


def prior_mean(p: FiniteBasePrior) -> Fraction:
    return sum((v * q for v, q in p.atoms), Fraction(0))


# -- sampler families --------------------------------------------------------


@dataclass(frozen=True)
class Finite:
    prior: FiniteBasePrior


@dataclass(frozen=True)
class UniformContinuous:
    low: float
    high: float

    def __post_init__(self):
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise ValidationError("uniform bounds must be finite")
        if self.low <= 0:
            raise ValidationError("uniform low must be positive")
        if self.high <= self.low:
            raise ValidationError("uniform high must exceed low")


@dataclass(frozen=True)
class LogNormal:
    mu: float
    sigma: float

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise ValidationError("lognormal mu must be finite")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValidationError("lognormal sigma must be positive")


@dataclass(frozen=True)
class GeometricScaled:
    """y = unit * K with K ~ Geometric(success_prob) on {1, 2, ...}."""

    success_prob: float
    unit: float

    def __post_init__(self):
        if not 0 < self.success_prob < 1:
            raise ValidationError("geometric success_prob must lie in (0, 1)")
        if not (math.isfinite(self.unit) and self.unit > 0):
            raise ValidationError("geometric unit must be positive")


SamplerSpec = Union[Finite, UniformContinuous, LogNormal, GeometricScaled]


def sampler_mean(s: SamplerSpec) -> float:
    """Analytic E[Y] for each family."""
    match s:
        case Finite(prior):
            return float(prior_mean(prior))
        case UniformContinuous(low, high):
            return 0.5 * (low + high)
        case LogNormal(mu, sigma):
            return math.exp(mu + 0.5 * sigma * sigma)
        case GeometricScaled(q, unit):
            return unit / q
    raise TypeError(f"unknown sampler {s!r}")


def draw_bases(s: SamplerSpec, rng: np.random.Generator, n: int):
    """Draw ``n`` base amounts.

    Returns ``(y, idx)`` where ``y`` is a float array and ``idx`` is the atom
    index array for finite priors (``None`` otherwise), so callers can recover
    exact values without a float round trip.
    """
    match s:
        case Finite(prior):
            cdf = np.cumsum([float(p) for p in prior.probs])
            cdf[-1] = 1.0
            idx = np.searchsorted(cdf, rng.random(n), side="right")
            values = np.array([float(v) for v in prior.values])
            return values[idx], idx
        case UniformContinuous(low, high):
            return rng.uniform(low, high, n), None
        case LogNormal(mu, sigma):
            return rng.lognormal(mu, sigma, n), None
        case GeometricScaled(q, unit):
            return unit * rng.geometric(q, n).astype(float), None
    raise TypeError(f"unknown sampler {s!r}")


def draw_picks(rng: np.random.Generator, n: int) -> np.ndarray:
    """Fair coin per trial: 0 = lower envelope, 1 = higher."""
    return rng.integers(0, 2, n)


def sample_world(s: SamplerSpec, stream: np.random.Generator) -> WorldState:
    """Draw one world: the base amount first, then the envelope pick."""
    y, idx = draw_bases(s, stream, 1)
    pick = EnvelopePick(int(draw_picks(stream, 1)[0]))
    if idx is not None:
        exact_y = s.prior.values[int(idx[0])]
    else:
        exact_y = Fraction(float(y[0]))
    return WorldState(exact_y, pick)


# -- observations ------------------------------------------------------------


@dataclass(frozen=True)
class Closed:
    pass


@dataclass(frozen=True)
class Open:
    x: Fraction

    def __post_init__(self):
        if not isinstance(self.x, Fraction):
            object.__setattr__(self, "x", amount(self.x))
        if self.x <= 0:
            raise ValidationError("observed amount must be positive")


Observation = Union[Closed, Open]
CLOSED = Closed()


class EnvelopeMode(str, enum.Enum):
    OPEN = "open"
    CLOSED = "closed"
