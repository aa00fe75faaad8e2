"""Shared error types."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed input text; `position` is the 0-based offset of the bad token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
