"""Error types shared across the workbench.

StructureError marks invalid or rejected input (CLI exit code 2),
BoundExceeded marks a blown resource bound (CLI exit code 3).
"""


class LatwbError(Exception):
    pass


class StructureError(LatwbError, ValueError):
    """Input is not a valid structure or violates an operation precondition."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BoundExceeded(LatwbError, RuntimeError):
    """A configured size or count bound was exceeded."""
