"""Exception types shared across the package."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed shape text or shape code.

    Carries the byte offset of the first violation and, when known, a
    short description of what was expected there.
    """

    def __init__(self, message: str, offset: int, expected: str | None = None):
        detail = f"{message} at offset {offset}"
        if expected is not None:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.offset = offset
        self.expected = expected


class InfeasibleError(RuntimeError):
    """A request was refused because it exceeds a work ceiling.

    ``estimate`` is the amount of work the request would need, in the
    same unit as ``limit`` (subsets to enumerate, shapes to scan, ...).
    Ceilings are soft: callers may retry with a higher limit.
    """

    def __init__(self, message: str, estimate: int, limit: int):
        super().__init__(f"{message}: would need ~{estimate} units of work (ceiling {limit})")
        self.estimate = estimate
        self.limit = limit


class InconsistentMultideckError(ValueError):
    """The given counts cannot be the multideck of any tree of the claimed size."""


class UnsupportedSizeError(ValueError):
    """No counterexample family is defined for the requested size."""


class VerificationError(RuntimeError):
    """An exhaustive computation contradicted a closed-form prediction."""
