"""Exceptions shared across the package."""


class ResourceLimitError(RuntimeError):
    """An exhaustive computation would exceed the configured size cap."""


class UnsupportedMapError(ValueError):
    """The operation is only defined for maps between groups of one prime."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; this would contradict a proven bound."""
