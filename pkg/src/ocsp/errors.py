"""Shared exception types."""


class OcspError(Exception):
    """Base class for errors raised by this package."""


class ParseError(OcspError):
    """Malformed instance text. Carries the 1-based line and column."""

    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class SupportMismatchError(OcspError):
    """Two chain functions were combined without sharing a support."""


class TieError(OcspError):
    """A point with coinciding coordinates was given where a strict order is needed."""


class CyclicPosetError(OcspError):
    """An operation required an acyclic order relation."""


class CapExceededError(OcspError):
    """An enumeration would exceed its configured size cap."""


class BudgetExceededError(OcspError):
    """An exact computation would exceed its configured work budget."""
