"""Shared exception types."""


class ResourceGuardError(RuntimeError):
    """A computation was refused because it would exceed a size/memory guard.

    Raised instead of silently truncating.  The CLI maps this to exit code 3.
    """
