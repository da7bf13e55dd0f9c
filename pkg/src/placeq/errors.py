"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


class PlaceqError(Exception):
    exit_code = 1


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ParseError(PlaceqError):
    exit_code = 2

    def __init__(self, message: str, span: Optional[SourceSpan] = None):
        self.span = span
        super().__init__(f"{message} at {span}" if span else message)


class InvalidPlaceError(ParseError):
    """A place that is neither a prime nor ``inf``."""


class UnsupportedConstruct(PlaceqError):
    exit_code = 3


class SignatureError(UnsupportedConstruct):
    pass


class DnfTooLarge(UnsupportedConstruct):
    """A disjunctive normal form outgrew the configured limit."""


class IllSortedError(PlaceqError):
    exit_code = 4


class NoWitnessError(PlaceqError):
    pass
