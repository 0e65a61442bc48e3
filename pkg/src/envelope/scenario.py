"""JSON scenario documents and the (de)serializers behind them.

Rationals travel as "num/den" strings. Sampler parameters are the one place
plain decimals (JSON numbers or strings) are accepted.

A scenario looks like::

    {
      "prior": {"atoms": [{"value": "1/1", "prob": "1/2"}, {"value": "2/1", "prob": "1/2"}]},
      "strategy": {"kind": "mean_threshold"},
      "knowledge": {"kind": "full_prior"},
      "envelope_mode": "open",
      "engine": {"kind": "exact"}
    }

``"strategies": [...]`` replaces ``"strategy"`` for comparisons, and a
``full_prior`` knowledge block without atoms means "the scenario's own prior".
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .errors import ValidationError
from .model import (
    EnvelopeMode,
    Finite,
    FiniteBasePrior,
    GeometricScaled,
    LogNormal,
    SamplerSpec,
    UniformContinuous,
    amount,
    format_rational,
    rational,
)
from .montecarlo import SimConfig, check_seed
from .strategy import (
    NO_INFORMATION,
    Always,
    BayesArgmax,
    BayesMixed,
    Blind,
    Bounds,
    BoundsRule,
    ExponentialDecay,
    FullPrior,
    MeanOnly,
    MeanThreshold,
    MonotoneDecreasing,
    Never,
    NoInformation,
    PriorKnowledge,
    Reciprocal,
    StrategySpec,
    check_requirements,
)


def _require(d, key: str, where: str):
    if not isinstance(d, dict):
        raise ValidationError(f"{where} must be a JSON object")
    if key not in d:
        raise ValidationError(f"{where} is missing '{key}'")
    return d[key]


def _real(value, name: str) -> float:
    if isinstance(value, bool):
        raise ValidationError(f"{name} must be a number")
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name} must be a number, got {value!r}") from exc


# -- priors and samplers -----------------------------------------------------


def prior_from_json(d: dict) -> FiniteBasePrior:
    atoms = _require(d, "atoms", "prior")
    if not isinstance(atoms, list):
        raise ValidationError("prior atoms must be a list")
    pairs = [(_require(a, "value", "atom"), _require(a, "prob", "atom")) for a in atoms]
    return FiniteBasePrior.from_pairs(pairs)


def prior_to_json(p: FiniteBasePrior) -> dict:
    return {"atoms": [{"value": format_rational(v), "prob": format_rational(q)} for v, q in p.atoms]}


def sampler_from_json(d: dict) -> SamplerSpec:
    kind = d.get("kind", "finite") if isinstance(d, dict) else None
    match kind:
        case "finite":
            return Finite(prior_from_json(d))
        case "uniform":
            return UniformContinuous(_real(_require(d, "low", "uniform"), "low"), _real(_require(d, "high", "uniform"), "high"))
        case "lognormal":
            return LogNormal(_real(_require(d, "mu", "lognormal"), "mu"), _real(_require(d, "sigma", "lognormal"), "sigma"))
        case "geometric":
            return GeometricScaled(
                _real(_require(d, "success_prob", "geometric"), "success_prob"),
                _real(_require(d, "unit", "geometric"), "unit"),
            )
    raise ValidationError(f"unknown sampler kind {kind!r}")


def sampler_to_json(s: SamplerSpec) -> dict:
    match s:
        case Finite(prior):
            return {"kind": "finite", **prior_to_json(prior)}
        case UniformContinuous(low, high):
            return {"kind": "uniform", "low": low, "high": high}
        case LogNormal(mu, sigma):
            return {"kind": "lognormal", "mu": mu, "sigma": sigma}
        case GeometricScaled(q, unit):
            return {"kind": "geometric", "success_prob": q, "unit": unit}
    raise TypeError(f"unknown sampler {s!r}")


# -- strategies and knowledge ------------------------------------------------


def strategy_from_json(d: dict) -> StrategySpec:
    kind = _require(d, "kind", "strategy")
    match kind:
        case "never":
            return Never()
        case "always":
            return Always()
        case "blind":
            return Blind(rational(_require(d, "p", "blind strategy")))
        case "mean_threshold":
            return MeanThreshold()
        case "bounds_rule":
            return BoundsRule(rational(_require(d, "fallback", "bounds_rule strategy")))
        case "bayes_argmax":
            return BayesArgmax()
        case "bayes_mixed":
            return BayesMixed()
        case "monotone_decreasing":
            form = _require(d, "form", "monotone_decreasing strategy")
            if form == "reciprocal":
                return MonotoneDecreasing(Reciprocal())
            if form == "exponential":
                return MonotoneDecreasing(ExponentialDecay(_real(_require(d, "rate", "exponential"), "rate")))
            raise ValidationError(f"unknown monotone_decreasing form {form!r}")
    raise ValidationError(f"unknown strategy kind {kind!r}")


def strategy_to_json(spec: StrategySpec) -> dict:
    match spec:
        case Never():
            return {"kind": "never"}
        case Always():
            return {"kind": "always"}
        case Blind(p):
            return {"kind": "blind", "p": format_rational(p)}
        case MeanThreshold():
            return {"kind": "mean_threshold"}
        case BoundsRule(fallback):
            return {"kind": "bounds_rule", "fallback": format_rational(fallback)}
        case BayesArgmax():
            return {"kind": "bayes_argmax"}
        case BayesMixed():
            return {"kind": "bayes_mixed"}
        case MonotoneDecreasing(Reciprocal()):
            return {"kind": "monotone_decreasing", "form": "reciprocal"}
        case MonotoneDecreasing(ExponentialDecay(rate)):
            return {"kind": "monotone_decreasing", "form": "exponential", "rate": rate}
    raise TypeError(f"unknown strategy {spec!r}")


def knowledge_from_json(d: Optional[dict], own_prior=None) -> PriorKnowledge:
    if d is None:
        return NO_INFORMATION
    kind = _require(d, "kind", "knowledge")
    match kind:
        case "no_information":
            return NO_INFORMATION
        case "mean_only":
            return MeanOnly(amount(_require(d, "mean_y", "mean_only knowledge")))
        case "bounds":
            lo, hi = d.get("y_min"), d.get("y_max")
            return Bounds(None if lo is None else amount(lo), None if hi is None else amount(hi))
        case "full_prior":
            if "atoms" in d:
                return FullPrior(prior_from_json(d))
            if not isinstance(own_prior, FiniteBasePrior):
                raise ValidationError("full_prior knowledge without atoms needs a finite scenario prior")
            return FullPrior(own_prior)
    raise ValidationError(f"unknown knowledge kind {kind!r}")


def knowledge_to_json(k: PriorKnowledge) -> dict:
    match k:
        case NoInformation():
            return {"kind": "no_information"}
        case MeanOnly(mean_y):
            return {"kind": "mean_only", "mean_y": format_rational(mean_y)}
        case Bounds(lo, hi):
            out = {"kind": "bounds"}
            if lo is not None:
                out["y_min"] = format_rational(lo)
            if hi is not None:
                out["y_max"] = format_rational(hi)
            return out
        case FullPrior(p):
            return {"kind": "full_prior", **prior_to_json(p)}
    raise TypeError(f"unknown knowledge {k!r}")


# -- scenarios ---------------------------------------------------------------


@dataclass(frozen=True)
class ExactEngine:
    pass


@dataclass(frozen=True)
class MonteCarloEngine:
    trials: int
    seed: int


@dataclass(frozen=True)
class Scenario:
    prior: Union[FiniteBasePrior, SamplerSpec]
    strategies: tuple[tuple[StrategySpec, PriorKnowledge], ...]
    envelope_mode: EnvelopeMode
    engine: Union[ExactEngine, MonteCarloEngine]

    @property
    def strategy(self) -> StrategySpec:
        return self.strategies[0][0]

    @property
    def knowledge(self) -> PriorKnowledge:
        return self.strategies[0][1]

    @property
    def finite_prior(self) -> FiniteBasePrior:
        if isinstance(self.prior, FiniteBasePrior):
            return self.prior
        if isinstance(self.prior, Finite):
            return self.prior.prior
        raise ValidationError("the exact engine needs a finite prior")

    def sampler(self) -> SamplerSpec:
        if isinstance(self.prior, FiniteBasePrior):
            return Finite(self.prior)
        return self.prior

    def sim_config(self) -> SimConfig:
        if not isinstance(self.engine, MonteCarloEngine):
            raise ValidationError("scenario does not use the monte_carlo engine")
        return SimConfig(
            self.engine.trials, self.engine.seed, self.sampler(), self.strategy, self.knowledge, self.envelope_mode
        )


def _engine_from_json(d) -> Union[ExactEngine, MonteCarloEngine]:
    if d is None:
        return ExactEngine()
    kind = _require(d, "kind", "engine")
    if kind == "exact":
        return ExactEngine()
    if kind == "monte_carlo":
        trials = _require(d, "trials", "monte_carlo engine")
        if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
            raise ValidationError("trials must be a positive integer")
        seed = _require(d, "seed", "monte_carlo engine")
        if isinstance(seed, str):
            if not seed.strip().isdigit():
                raise ValidationError(f"seed must be a decimal integer, got {seed!r}")
            seed = int(seed)
        return MonteCarloEngine(trials, check_seed(seed))
    raise ValidationError(f"unknown engine kind {kind!r}")


def scenario_from_json(d: dict) -> Scenario:
    if not isinstance(d, dict):
        raise ValidationError("scenario must be a JSON object")
    raw_prior = _require(d, "prior", "scenario")
    kind = raw_prior.get("kind", "finite") if isinstance(raw_prior, dict) else None
    prior = prior_from_json(raw_prior) if kind == "finite" else sampler_from_json(raw_prior)
    own = prior if isinstance(prior, FiniteBasePrior) else None

    try:
        mode = EnvelopeMode(d.get("envelope_mode", "open"))
    except ValueError as exc:
        raise ValidationError(f"envelope_mode must be 'open' or 'closed'") from exc

    shared = knowledge_from_json(d.get("knowledge"), own)
    if "strategies" in d:
        raw = d["strategies"]
        if not isinstance(raw, list) or not raw:
            raise ValidationError("strategies must be a non-empty list")
    else:
        raw = [_require(d, "strategy", "scenario")]
    strategies = []
    for entry in raw:
        spec = strategy_from_json(entry)
        k = knowledge_from_json(entry["knowledge"], own) if "knowledge" in entry else shared
        check_requirements(spec, mode, k)
        strategies.append((spec, k))

    engine = _engine_from_json(d.get("engine"))
    if isinstance(engine, ExactEngine) and own is None:
        raise ValidationError("the exact engine needs a finite prior")
    return Scenario(prior, tuple(strategies), mode, engine)


def load_json(path: Union[str, Path]) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from exc


def load_scenario(path: Union[str, Path]) -> Scenario:
    return scenario_from_json(load_json(path))


def load_prior(path: Union[str, Path]) -> FiniteBasePrior:
    return prior_from_json(load_json(path))
