"""Exception hierarchy shared across the package.

Every error raised by the library derives from :class:`BellGameError`, so
callers (and the CLI) can distinguish our failures from programming errors.
Validation failures carry the full list of machine-readable violations.
"""

from __future__ import annotations


class BellGameError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(BellGameError):
    """A domain value violates one or more of its invariants.

    The ``violations`` attribute holds `model.Violation` records; ``codes``
    gives just their machine-readable codes.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))

    @property
    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


# --- transform -------------------------------------------------------------

class NotDichotomic(BellGameError):
    """An operation requires every outcome alphabet to be exactly {+1, -1}."""


class NotProductForm(BellGameError):
    """A winning set is not a full product-sign class of output tuples."""


class ZeroWeight(BellGameError):
    """All weights vanish, so no input distribution can be formed."""


class MissingQuantumValue(BellGameError):
    """The report has no quantum value to compare against."""


# --- classical -------------------------------------------------------------

class SearchSpaceTooLarge(BellGameError):
    """Exhaustive enumeration would exceed the configured evaluation cap."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"strategy space has {size} entries, exceeding the cap {cap}")


class ShapeMismatch(BellGameError):
    """A strategy does not match the game's parties, inputs, or alphabets."""


# --- quantum ---------------------------------------------------------------

class NotTwoParty(BellGameError):
    """The XOR-game solver only handles exactly two parties."""


class DimensionCapExceeded(BellGameError):
    """The joint Hilbert-space dimension exceeds the configured cap."""


class NotHermitian(BellGameError):
    """Matrix deviates from Hermiticity beyond the accepted tolerance."""


class UnsupportedVectorDim(BellGameError):
    """Witness reconstruction only supports strategy vectors of dimension <= 2."""


# --- catalog ---------------------------------------------------------------

class BadN(BellGameError):
    """The family index n is out of range (n >= 2 required)."""


class OutOfRange(BellGameError):
    """An argument lies outside its documented domain."""


# --- text format -----------------------------------------------------------

class BellSpecSyntaxError(BellGameError):
    """Malformed BELLSPEC text; carries the offending line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f" (line {line}" + (f", column {column}" if column else "") + ")" if line else ""
        super().__init__(message + where)


class VersionUnsupported(BellSpecSyntaxError):
    """The file declares a format version this parser does not understand."""
