"""
Exception hierarchy for the polysymplectic SPE toolkit.

Every error carries an ``ExitCategory`` so the CLI can map failures onto
stable exit codes without inspecting messages.
"""

from __future__ import annotations

from enum import Enum
from typing import Any


class ExitCategory(Enum):
    """CLI exit code per failure family."""

    OK = 0
    USAGE = 2
    CONFIG = 3
    NUMERICAL = 4
    IO = 5


class SPEError(Exception):
    """Root of all toolkit errors."""

    category: ExitCategory = ExitCategory.NUMERICAL

    def __init__(self, message: str, **context: Any):
        """Store a human-readable message plus structured context for logging."""
        super().__init__(message)
        self.context: dict[str, Any] = dict(context)

    def annotate(self, **context: Any) -> SPEError:
        """Attach more context (e.g. the failing cell) and return self for re-raising."""
        self.context.update(context)
        return self

    def __str__(self) -> str:
        base = super().__str__()
        if not self.context:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{base} ({details})"


# =============================================================================
# CONFIGURATION
# =============================================================================


class ConfigError(SPEError):
    """Invalid run configuration."""

    category = ExitCategory.CONFIG


class MissingKey(ConfigError):
    """A required configuration key is absent."""

    def __init__(self, name: str):
        super().__init__(f"missing required key '{name}'", key=name)
        self.name = name


class InvalidValue(ConfigError):
    """A configuration value failed validation."""

    def __init__(self, name: str, reason: str):
        super().__init__(f"invalid value for '{name}': {reason}", key=name)
        self.name = name
        self.reason = reason


class UnknownKey(ConfigError):
    """A configuration key is not part of the schema."""

    def __init__(self, name: str):
        super().__init__(f"unknown key '{name}'", key=name)
        self.name = name


# =============================================================================
# DATA SHAPE / DOMAIN
# =============================================================================


class DataError(SPEError):
    """Input data violates a precondition."""

    category = ExitCategory.CONFIG


class RightBoundaryNotVanishing(DataError):
    """Initial data does not vanish at the right boundary of the marching domain."""


class PatchTooSmall(DataError):
    """A finite-difference patch has fewer samples than the stencil needs."""


class BadLength(DataError):
    """Spectral data length is not a power of two."""


class LengthMismatch(DataError):
    """Two fields compared pointwise have different lengths or times."""


class ShapeMismatch(DataError):
    """Traces handed to a diagnostic do not share the same shape."""


# =============================================================================
# NUMERICAL
# =============================================================================


class NumericalError(SPEError):
    """A numerical procedure failed."""

    category = ExitCategory.NUMERICAL


class NoRealRoot(NumericalError):
    """The cubic solver found no real root (cannot happen for real monic cubics)."""


class NewtonDiverged(NumericalError):
    """Damped Newton iteration on the midpoint equations did not converge."""

    def __init__(self, iterations: int, residual: float, **context: Any):
        super().__init__("Newton iteration diverged", iterations=iterations, residual=residual, **context)
        self.iterations = iterations
        self.residual = residual


class SingularLinearization(NumericalError):
    """The linearized cell system is singular."""


class NonInvertibleParametrization(NumericalError):
    """The soliton's parametric map y -> x cannot be inverted at the queried point."""


class InstabilityDetected(NumericalError):
    """The spectral run blew up."""


class NonZeroMean(NumericalError):
    """The inverse spectral derivative is undefined for data with non-zero mean."""


class CertificationFailed(NumericalError):
    """The exact-solution transcription failed its PDE-residual convergence check."""


# =============================================================================
# I/O
# =============================================================================


class IoError(SPEError):
    """Reading or writing an output file failed."""

    category = ExitCategory.IO


__all__ = [
    "BadLength",
    "CertificationFailed",
    "ConfigError",
    "DataError",
    "ExitCategory",
    "InstabilityDetected",
    "InvalidValue",
    "IoError",
    "LengthMismatch",
    "MissingKey",
    "NewtonDiverged",
    "NoRealRoot",
    "NonInvertibleParametrization",
    "NonZeroMean",
    "NumericalError",
    "PatchTooSmall",
    "RightBoundaryNotVanishing",
    "SPEError",
    "ShapeMismatch",
    "SingularLinearization",
    "UnknownKey",
]
