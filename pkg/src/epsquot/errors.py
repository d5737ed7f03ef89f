"""Exception types shared across the package."""

from __future__ import annotations


class SizeLimitError(ValueError):
    """An enumeration would exceed its configured bound."""


class UnsupportedScopeError(NotImplementedError):
    """The request is well-defined but outside what can be evaluated numerically."""


class ConsistencyError(ArithmeticError):
    """An internal cross-check failed, e.g. a localization sum depends on lambda."""


class ExprParseError(ValueError):
    """Malformed class expression; carries the 0-based column of the problem."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        self.message = message
        super().__init__(f"col {pos + 1}: {message}")

    def diagnostic(self) -> str:
        return f"error at col {self.pos + 1}: {self.message}\n  {self.text}\n  {' ' * self.pos}^"
