"""Exceptions raised by entangledparity.

All of them are `ValueError` subclasses, so callers that only know about
builtin exceptions keep working.
"""
from typing import Sequence


class DimensionError(ValueError):
    """Invalid cutoff, or operands whose dimensions do not match."""


class NonFiniteError(ValueError):
    """NaN or Inf reached a public operation."""


class ConvergenceError(ValueError):
    """A Gaussian integral was requested outside its convergence region."""

    def __init__(self, conditions: Sequence[str]):
        self.conditions = list(conditions)
        super(ConvergenceError, self).__init__(
            "Convergence conditions violated: " + "; ".join(self.conditions)
        )


class CostGuardError(ValueError):
    """A quadrature would visit more nodes than the configured limit."""


class CutoffError(ValueError):
    """The Fock cutoff is too small for the requested state."""


class PipelineMismatchError(ValueError):
    """Two evaluation routes of the same quantity disagree."""

    def __init__(self, what: str, first: complex, second: complex, tolerance: float):
        self.first = first
        self.second = second
        super(PipelineMismatchError, self).__init__(
            f"{what}: {first!r} != {second!r} "
            f"(|diff|={abs(first - second):.3e} > {tolerance:.1e})"
        )


class SpecError(ValueError):
    """A state, method, angle or tolerance token could not be parsed."""

    def __init__(self, token: str, reason: str = "malformed"):
        self.token = token
        super(SpecError, self).__init__(f"{reason}: '{token}'")
