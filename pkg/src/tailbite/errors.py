"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "TailbiteError",
    "ParameterError",
    "ConstructionError",
    "ResourceRefusalError",
    "DegenerateCodeError",
]


class TailbiteError(Exception):
    """Base class for all package errors."""


class ParameterError(TailbiteError, ValueError):
    """An argument violates a documented precondition."""


class ConstructionError(TailbiteError):
    """A code construction's structural precondition does not hold."""


class ResourceRefusalError(TailbiteError):
    """Work refused because it exceeds a hard resource ceiling."""


class DegenerateCodeError(TailbiteError):
    """The code is degenerate for the requested quantity (e.g. no nonzero word)."""
