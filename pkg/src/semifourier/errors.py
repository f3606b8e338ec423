"""Exception types raised by the public API.

Everything derives from :class:`SemiFourierError`, which itself derives from
``ValueError`` so that callers who do not care about the fine-grained kind can
catch the usual builtin.
"""

from __future__ import annotations

__all__ = [
    "SemiFourierError",
    "InvalidConfigError",
    "InvalidModeError",
    "PointOutOfDomainError",
    "DerivativeUnavailableError",
    "NonFiniteIntegrandError",
    "TruncationMismatchError",
    "TruncationExceededError",
    "InsufficientModesError",
]


class SemiFourierError(ValueError):
    """Base class for all package errors."""


class InvalidConfigError(SemiFourierError):
    """Interval or shift parameters violate b > a, k > 0, or finiteness."""


class InvalidModeError(SemiFourierError):
    """Mode index is not a positive integer or branch is unknown."""


class PointOutOfDomainError(SemiFourierError):
    """Evaluation point lies outside [a, b]."""


class DerivativeUnavailableError(SemiFourierError):
    """A derivative order beyond what the function supplies was requested."""


class NonFiniteIntegrandError(SemiFourierError):
    """Integrand produced NaN or infinity at a quadrature node."""


class TruncationMismatchError(SemiFourierError):
    """Two coefficient vectors do not share the same truncation order."""


class TruncationExceededError(SemiFourierError):
    """A partial sum was requested beyond the stored truncation order."""


class InsufficientModesError(SemiFourierError):
    """Too few coefficients for a statistically meaningful classification."""
