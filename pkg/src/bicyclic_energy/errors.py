"""Exception types shared across the toolkit."""
from __future__ import annotations


class ParameterDomainError(ValueError):
    """A family or operation parameter is outside its allowed range."""


class CapacityError(ValueError):
    """A request exceeds a configured size cap (enumeration order, scan bound)."""


class ConvergenceError(RuntimeError):
    """Numerical quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error bound {achieved:.3e})")
        self.achieved = achieved


class NonSymmetricSpectrumError(ValueError):
    """Real-root count of a supposed characteristic polynomial differs from its degree."""


class UsageError(ValueError):
    """An operation was called without data it needs."""
