from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from envelope import (
    NO_INFORMATION,
    Always,
    BayesArgmax,
    BayesMixed,
    Blind,
    Bounds,
    BoundsRule,
    EnvelopeMode,
    ExponentialDecay,
    Finite,
    FiniteBasePrior,
    FullPrior,
    GeometricScaled,
    LogNormal,
    MeanOnly,
    MeanThreshold,
    MonotoneDecreasing,
    Never,
    Reciprocal,
    UniformContinuous,
    ValidationError,
)
from envelope.scenario import (
    ExactEngine,
    MonteCarloEngine,
    knowledge_from_json,
    knowledge_to_json,
    prior_from_json,
    prior_to_json,
    sampler_from_json,
    sampler_to_json,
    scenario_from_json,
    strategy_from_json,
    strategy_to_json,
)

from _priors import finite_priors

F = Fraction
COIN = {"atoms": [{"value": "1/1", "prob": "1/2"}, {"value": "2/1", "prob": "1/2"}]}

STRATEGIES = [
    Never(),
    Always(),
    Blind(F(1, 3)),
    MeanThreshold(),
    BoundsRule(F(1, 2)),
    BayesArgmax(),
    BayesMixed(),
    MonotoneDecreasing(Reciprocal()),
    MonotoneDecreasing(ExponentialDecay(0.75)),
]


@pytest.mark.parametrize("spec", STRATEGIES)
def test_strategy_round_trip(spec):
    assert strategy_from_json(strategy_to_json(spec)) == spec


@given(finite_priors())
def test_prior_round_trip(prior):
    assert prior_from_json(prior_to_json(prior)) == prior


@pytest.mark.parametrize(
    "sampler",
    [
        Finite(FiniteBasePrior.from_mapping({3: F(1)})),
        UniformContinuous(0.5, 2.0),
        LogNormal(-1.0, 0.25),
        GeometricScaled(0.1, 3.0),
    ],
)
def test_sampler_round_trip(sampler):
    assert sampler_from_json(sampler_to_json(sampler)) == sampler


def test_sampler_accepts_decimal_strings():
    assert sampler_from_json({"kind": "lognormal", "mu": "0.5", "sigma": "1.25"}) == LogNormal(0.5, 1.25)


@pytest.mark.parametrize(
    "k",
    [NO_INFORMATION, MeanOnly(F(7, 3)), Bounds(F(1)), Bounds(y_max=F(9, 2)), Bounds(F(1), F(4)), FullPrior(FiniteBasePrior.from_mapping({2: F(1)}))],
)
def test_knowledge_round_trip(k):
    assert knowledge_from_json(knowledge_to_json(k)) == k


def test_full_prior_defaults_to_scenario_prior():
    sc = scenario_from_json({"prior": COIN, "strategy": {"kind": "bayes_mixed"}, "knowledge": {"kind": "full_prior"}})
    assert sc.knowledge == FullPrior(sc.finite_prior)
    assert isinstance(sc.engine, ExactEngine)
    assert sc.envelope_mode is EnvelopeMode.OPEN


def test_monte_carlo_engine_and_sampler():
    sc = scenario_from_json(
        {
            "prior": {"kind": "uniform", "low": 1, "high": 2},
            "strategy": {"kind": "always"},
            "envelope_mode": "closed",
            "engine": {"kind": "monte_carlo", "trials": 50, "seed": "18446744073709551615"},
        }
    )
    assert sc.engine == MonteCarloEngine(50, 2**64 - 1)
    cfg = sc.sim_config()
    assert cfg.sampler == UniformContinuous(1.0, 2.0)
    assert cfg.envelope_mode is EnvelopeMode.CLOSED


@pytest.mark.parametrize(
    "doc",
    [
        {"strategy": {"kind": "never"}},
        {"prior": COIN},
        {"prior": COIN, "strategy": {"kind": "blind"}},
        {"prior": COIN, "strategy": {"kind": "blind", "p": 0.5}},
        {"prior": COIN, "strategy": {"kind": "never"}, "envelope_mode": "ajar"},
        {"prior": COIN, "strategy": {"kind": "never"}, "engine": {"kind": "quantum"}},
        {"prior": COIN, "strategies": []},
        {"prior": {"atoms": [{"value": "1", "prob": 1}, {"value": "1", "prob": 0}]}, "strategy": {"kind": "never"}},
        {"prior": {"kind": "lognormal", "mu": 0}, "strategy": {"kind": "never"}},
        {"prior": {"kind": "uniform", "low": 1, "high": 2}, "strategy": {"kind": "never"}, "knowledge": {"kind": "full_prior"}},
        {"prior": COIN, "strategy": {"kind": "monotone_decreasing", "form": "sigmoid"}},
        {"prior": COIN, "strategy": {"kind": "never"}, "knowledge": {"kind": "mean_only", "mean_y": "-1"}},
        [],
    ],
)
def test_rejects_malformed(doc):
    with pytest.raises(ValidationError):
        scenario_from_json(doc)
