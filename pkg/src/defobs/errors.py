"""Exception types. Usage errors derive from ValueError, broken internal
invariants from RuntimeError."""
from __future__ import annotations


class DescriptorError(ValueError):
    """Malformed descriptor; ``position`` is a 0-based offset into the text."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class UnknownAtomError(DescriptorError):
    pass


class UnsupportedAtomError(ValueError):
    """The atom is well formed but the requested invariant is unavailable."""


class PreconditionError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """Two routes that must agree did not."""


class OracleUndecided(RuntimeError):
    pass
