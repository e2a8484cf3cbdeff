"""Shared exception base for the package."""


class TableScopeError(Exception):
    """Base class for all tablescope errors."""
