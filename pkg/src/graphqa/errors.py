"""Shared exception base so callers can catch any package error at once."""


class GraphQAError(Exception):
    """Base class for every error raised by this package."""
