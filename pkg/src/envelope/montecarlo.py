"""Seeded Monte Carlo estimates of the expected payoff.

Random stream layout
--------------------
Trials are cut into fixed blocks of ``BLOCK_SIZE``. Block ``i`` draws from
``PCG64(SeedSequence(seed, spawn_key=(i,)))``, which is the same stream
``SeedSequence(seed).spawn(...)[i]`` would produce. Inside a block the draws
happen in a fixed order: all base amounts, then all envelope picks, then all
switch uniforms. Workers only decide *who* computes a block, never what it
contains, and block statistics are merged in block order, so every reported
number is independent of the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import ValidationError
from .model import (
    CLOSED,
    EnvelopeMode,
    Finite,
    Open,
    SamplerSpec,
    draw_bases,
    draw_picks,
)
from .strategy import (
    NO_INFORMATION,
    PriorKnowledge,
    StrategySpec,
    check_requirements,
    is_oblivious,
    switch_probability,
)

BLOCK_SIZE = 8192
CI_Z = 1.96
SEED_LIMIT = 2**64
# Sample excess kurtosis above this means the normal-theory CI is not to be trusted.
KURTOSIS_WARN = 50.0


def block_stream(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ValidationError(f"seed must be an integer, got {seed!r}")
    if not 0 <= seed < SEED_LIMIT:
        raise ValidationError("seed must fit in 64 unsigned bits")
    return int(seed)


@dataclass(frozen=True)
class SimConfig:
    trials: int
    seed: int
    sampler: SamplerSpec
    strategy: StrategySpec
    knowledge: PriorKnowledge = NO_INFORMATION
    envelope_mode: EnvelopeMode = EnvelopeMode.OPEN

    def __post_init__(self):
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise ValidationError("trials must be a positive integer")
        object.__setattr__(self, "seed", check_seed(self.seed))
        object.__setattr__(self, "envelope_mode", EnvelopeMode(self.envelope_mode))
        check_requirements(self.strategy, self.envelope_mode, self.knowledge)


@dataclass(frozen=True)
class Moments:
    """Count, pairwise sum, mean and central moment sums M2..M4 of a sample."""

    n: int
    total: float
    mean: float
    m2: float
    m3: float
    m4: float

    @classmethod
    def of(cls, xs: np.ndarray) -> Moments:
        n = len(xs)
        total = float(np.sum(xs))  # numpy sums contiguous float arrays pairwise
        mean = total / n
        d = xs - mean
        d2 = d * d
        return cls(n, total, mean, float(np.sum(d2)), float(np.sum(d2 * d)), float(np.sum(d2 * d2)))

    def merge(self, other: Moments) -> Moments:
        # Chan et al. / Pebay pairwise update for central moments
        na, nb = self.n, other.n
        n = na + nb
        delta = other.mean - self.mean
        mean = self.mean + delta * nb / n
        m2 = self.m2 + other.m2 + delta**2 * na * nb / n
        m3 = (
            self.m3
            + other.m3
            + delta**3 * na * nb * (na - nb) / n**2
            + 3 * delta * (na * other.m2 - nb * self.m2) / n
        )
        m4 = (
            self.m4
            + other.m4
            + delta**4 * na * nb * (na * na - na * nb + nb * nb) / n**3
            + 6 * delta**2 * (na * na * other.m2 + nb * nb * self.m2) / n**2
            + 4 * delta * (na * other.m3 - nb * self.m3) / n
        )
        return Moments(n, self.total + other.total, mean, m2, m3, m4)


def tree_merge(parts: list[Moments]) -> Moments:
    """Merge neighbours level by level; the shape depends only on len(parts)."""
    if not parts:
        raise ValueError("nothing to merge")
    while len(parts) > 1:
        nxt = [parts[i].merge(parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


@dataclass(frozen=True)
class SimResult:
    mean: float
    stderr: float
    ci95_low: float
    ci95_high: float
    trials: int
    seed: Optional[int] = None
    excess_kurtosis: Optional[float] = None

    @classmethod
    def from_moments(cls, m: Moments, seed: Optional[int] = None) -> SimResult:
        mean = m.total / m.n
        # a single trial has no spread estimate; report zero rather than NaN
        stderr = math.sqrt(m.m2 / (m.n - 1) / m.n) if m.n > 1 else 0.0
        kurt = m.n * m.m4 / (m.m2 * m.m2) - 3.0 if m.m2 > 0 else None
        return cls(mean, stderr, mean - CI_Z * stderr, mean + CI_Z * stderr, m.n, seed, kurt)

    @property
    def heavy_tailed(self) -> bool:
        return self.excess_kurtosis is not None and self.excess_kurtosis > KURTOSIS_WARN

    def covers(self, value: float, k: float = 4.0) -> bool:
        return abs(self.mean - value) <= k * self.stderr

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "ci95_low": self.ci95_low,
            "ci95_high": self.ci95_high,
            "trials": self.trials,
            "seed": self.seed,
            "excess_kurtosis": self.excess_kurtosis,
        }

    @classmethod
    def from_dict(cls, d: dict) -> SimResult:
        return cls(**{k: d[k] for k in cls.__dataclass_fields__})


def _switch_probs(cfg: SimConfig, y: np.ndarray, idx, pick: np.ndarray) -> np.ndarray:
    if is_oblivious(cfg.strategy):
        s = switch_probability(cfg.strategy, CLOSED, cfg.knowledge)
        return np.full(len(y), float(s))
    if idx is not None:
        # finite prior: observation is exact, at most 2k distinct values
        values = cfg.sampler.prior.values
        keys = idx * 2 + pick
        uniq, inverse = np.unique(keys, return_inverse=True)
        table = np.array(
            [
                float(switch_probability(cfg.strategy, Open(values[k // 2] * (1 + k % 2)), cfg.knowledge))
                for k in uniq.tolist()
            ]
        )
        return table[inverse]
    x = y * (1 + pick)
    uniq, inverse = np.unique(x, return_inverse=True)
    table = np.array(
        [float(switch_probability(cfg.strategy, Open(Fraction(v)), cfg.knowledge)) for v in uniq.tolist()]
    )
    return table[inverse]


def block_payoffs(cfg: SimConfig, block: int, n: int) -> np.ndarray:
    rng = block_stream(cfg.seed, block)
    y, idx = draw_bases(cfg.sampler, rng, n)
    pick = draw_picks(rng, n)
    u = rng.random(n)
    s = _switch_probs(cfg, y, idx, pick)
    held = y * (1 + pick)
    other = y * (2 - pick)
    return np.where(u < s, other, held)


def _block_moments(args) -> Moments:
    cfg, block, n = args
    return Moments.of(block_payoffs(cfg, block, n))


def _blocks(trials: int) -> list[int]:
    full, rest = divmod(trials, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def run_sim(cfg: SimConfig, workers: int = 1) -> SimResult:
    """Estimate E[V] by simulation; the result does not depend on ``workers``."""
    if workers < 1:
        raise ValidationError("workers must be >= 1")
    jobs = [(cfg, i, n) for i, n in enumerate(_blocks(cfg.trials))]
    if workers == 1 or len(jobs) == 1:
        parts = [_block_moments(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_block_moments, jobs))
    return SimResult.from_moments(tree_merge(parts), cfg.seed)


@dataclass(frozen=True)
class CloneResult:
    y: Fraction
    clones: int
    mean_x: float
    implied_y: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "implied_y", 2.0 / 3.0 * self.mean_x)

    def to_dict(self) -> dict:
        return {
            "y": f"{self.y.numerator}/{self.y.denominator}",
            "clones": self.clones,
            "mean_x": self.mean_x,
            "implied_y": self.implied_y,
        }

    @classmethod
    def from_dict(cls, d: dict) -> CloneResult:
        return cls(Fraction(d["y"]), d["clones"], d["mean_x"])


def run_clones(y: Fraction, clones: int, seed: int) -> CloneResult:
    """Fix the base amount, play ``clones`` parallel games, average what we see."""
    if y <= 0:
        raise ValidationError("y must be positive")
    if isinstance(clones, bool) or not isinstance(clones, int) or clones < 1:
        raise ValidationError("clones must be a positive integer")
    rng = block_stream(check_seed(seed), 0)
    higher = int(np.count_nonzero(draw_picks(rng, clones)))
    # each game shows y or 2y, so the average is exactly y * (1 + higher/clones)
    mean_x = y * (clones + higher) / clones
    return CloneResult(y, clones, float(mean_x))
