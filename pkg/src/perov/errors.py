"""Exception types shared across the library."""

from __future__ import annotations


class UsageError(ValueError):
    """The caller violated a precondition (bad dimensions, invalid values)."""


class NotCertifiedError(Exception):
    """Contraction certification failed.

    Carries the spectral radius estimate so callers can report how far the
    matrix is from being certifiable.
    """

    def __init__(self, estimate: float, message: str | None = None):
        self.estimate = float(estimate)
        if message is None:
            message = (
                f"not certified: spectral radius estimate "
                f"{self.estimate!r} is not below 1"
            )
        super().__init__(message)


class ConvergenceFailure(Exception):
    """An iterative numerical routine ran out of budget.

    For spectral radius estimation the last bracket is attached so the
    failure is diagnosable.
    """

    def __init__(self, message: str, bracket: tuple[float, float] | None = None):
        self.bracket = bracket
        super().__init__(message)


class PreimageError(Exception):
    """A supplied preimage oracle failed its residual check."""


class EvaluationError(Exception):
    """A map evaluation produced a non-finite value."""
