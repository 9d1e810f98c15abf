"""Shared exception types."""


class NumericalError(RuntimeError):
    """A numerical procedure failed to converge or lost its bracket."""
