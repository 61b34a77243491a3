"""Custom exceptions for the anisotropic spectral toolkit."""

from __future__ import annotations

from typing import Any


class AnisoError(Exception):
    """Base exception for toolkit failures."""


class GridError(AnisoError):
    """Raised when a grid is invalid or two grids do not match."""


class FieldError(AnisoError):
    """Raised when field data violates a reality, mean or divergence condition."""


class FieldFormatError(AnisoError):
    """Raised when a field container or its sidecar cannot be decoded."""


class NormSpecError(AnisoError):
    """Raised when a norm description uses unsupported indices."""


class CutoffError(AnisoError):
    """Raised when frequency cutoffs are inconsistent."""


class SupportError(AnisoError):
    """Raised when a field's spectrum violates a declared support."""


class ConfigError(AnisoError):
    """Raised when a run configuration cannot be parsed or validated."""

    def __init__(self, message: str, *, location: str | None = None) -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class SolverError(AnisoError):
    """Raised when time integration fails."""


class BlowupSuspected(SolverError):
    """Raised when a step produces non-finite values or runaway gradient growth."""

    def __init__(self, message: str, *, last_state: Any = None) -> None:
        super().__init__(message)
        self.last_state = last_state


class CriterionError(AnisoError):
    """Raised when a criterion monitor's preconditions fail."""


class SuiteError(AnisoError):
    """Raised when a verification suite name is unknown."""
