"""Random finite priors shared by the property tests and the acceptance gate."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from envelope import FiniteBasePrior

# Small powers of two and their neighbours, so y and 2y often share a support.
DOUBLING_VALUES = [1, 2, 3, 4, 6, 8, 12, 16, 24, 32]


def random_prior(rng: random.Random, max_support: int = 8) -> FiniteBasePrior:
    k = rng.randint(1, max_support)
    if rng.random() < 0.5:
        values = rng.sample(DOUBLING_VALUES, k)
    else:
        values = set()
        while len(values) < k:
            values.add(Fraction(rng.randint(1, 120), rng.randint(1, 9)))
        values = list(values)
    weights = [rng.randint(1, 20) for _ in values]
    total = sum(weights)
    return FiniteBasePrior.from_pairs((v, Fraction(w, total)) for v, w in zip(values, weights))


def random_priors(n: int, seed: int = 0, max_support: int = 8) -> list[FiniteBasePrior]:
    rng = random.Random(seed)
    return [random_prior(rng, max_support) for _ in range(n)]


@st.composite
def finite_priors(draw, max_support: int = 8, max_value: int = 64):
    values = draw(
        st.lists(
            st.fractions(min_value=Fraction(1, 8), max_value=max_value, max_denominator=8).filter(lambda v: v > 0),
            min_size=1,
            max_size=max_support,
            unique=True,
        )
    )
    weights = draw(st.lists(st.integers(1, 50), min_size=len(values), max_size=len(values)))
    total = sum(weights)
    return FiniteBasePrior.from_pairs((v, Fraction(w, total)) for v, w in zip(values, weights))
