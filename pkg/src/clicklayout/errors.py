"""Exception types shared across the package."""

from __future__ import annotations


class ClickLayoutError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ClickLayoutError):
    """A value violates a schema or type invariant."""

    def __init__(self, message: str, violations: tuple[str, ...] = ()):
        super().__init__(message)
        self.violations = violations


class ParseError(ClickLayoutError):
    """Input text could not be parsed."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class NotFoundError(ClickLayoutError):
    """A referenced entity (box id, session) does not exist."""


class NoMatchError(ClickLayoutError):
    """A drawn reference overlaps no object in the scene."""


class UnsupportedInstructionError(ClickLayoutError):
    """The instruction falls outside the rule-based interpreter grammar."""


class PreconditionError(ClickLayoutError):
    """An operation was called in a state that does not allow it."""


class TransportError(ClickLayoutError):
    """A remote call failed after exhausting retries."""


class UnknownPromptError(ClickLayoutError):
    """The fixture backend has no recorded response for a prompt."""


class ExtractionError(ClickLayoutError):
    """No layout JSON could be extracted from a model response."""

    def __init__(self, message: str, raw: str = ""):
        super().__init__(message)
        self.raw = raw


class ProtocolError(ClickLayoutError):
    """A remote service answered with an unexpected payload shape."""


class GenerationError(ClickLayoutError):
    """Image generation failed; carries the preview fallback when available."""

    def __init__(self, message: str, fallback=None):
        super().__init__(message)
        self.fallback = fallback
