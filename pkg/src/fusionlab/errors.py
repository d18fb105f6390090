"""Exception hierarchy shared by all fusionlab modules."""

from __future__ import annotations


class FusionError(Exception):
    """Base class for every error raised by fusionlab."""


class LabelError(FusionError, ValueError):
    """A label is not a valid irreducible of the ring it was used with."""


class RingMismatchError(FusionError, ValueError):
    """Operands belong to different rings."""


class ParameterError(FusionError, ValueError):
    """A construction parameter is outside its allowed range."""


class ValidationError(FusionError):
    """A structural check failed; ``witness`` reproduces the failure."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class EvaluationError(FusionError):
    """A multiplier could not be evaluated on some label."""

    def __init__(self, message: str, labels=()):
        super().__init__(message)
        self.labels = tuple(labels)


class NumericalError(FusionError, ArithmeticError):
    """A numerical routine did not reach its requested accuracy."""

    def __init__(self, message: str, estimate=None):
        super().__init__(message)
        self.estimate = estimate
