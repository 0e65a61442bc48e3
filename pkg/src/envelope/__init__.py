"""Exact and simulated payoffs for the two-envelope game."""

from .errors import (
    EmptyPrior,
    EnvelopeError,
    ImpossibleObservation,
    MissingObservation,
    MissingPrior,
    StrategyRequirementUnmet,
    ValidationError,
)
from .exact import (
    ExactReport,
    Posterior,
    conditional_gain,
    correct_open_value,
    decompose_correction,
    exact_value,
    naive_value,
    posterior,
)
from .model import (
    CLOSED,
    Closed,
    EnvelopeMode,
    EnvelopePick,
    Finite,
    FiniteBasePrior,
    GeometricScaled,
    LogNormal,
    Open,
    UniformContinuous,
    WorldState,
    amount,
    prior_mean,
    rational,
    sample_world,
    world_values,
)
from .montecarlo import CloneResult, SimConfig, SimResult, run_clones, run_sim
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
    Reciprocal,
    switch_probability,
)
