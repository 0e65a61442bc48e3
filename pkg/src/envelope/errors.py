class EnvelopeError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(EnvelopeError, ValueError):
    """Malformed input: bad rational, out-of-range parameter, bad scenario."""


class EmptyPrior(ValidationError):
    pass


class StrategyRequirementUnmet(ValidationError):
    """A strategy was asked to act without the information it needs."""


class MissingObservation(StrategyRequirementUnmet):
    pass


class MissingPrior(StrategyRequirementUnmet):
    pass


class ImpossibleObservation(EnvelopeError):
    """The observed amount has zero probability under the given prior."""
