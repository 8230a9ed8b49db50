"""Exception types shared across the package."""

__all__ = ["ParameterError", "SolverError"]


class ParameterError(ValueError):
    """An argument is outside the range an operation accepts."""


class SolverError(RuntimeError):
    """A linear solve or time-stepping run failed (e.g. singular system)."""
