"""Exception types shared by the language front end, interpreter, arithmetic
kernel, and matchers.

Execution faults mirror the checked failure modes of the reversible
semantics: every join-point assertion that does not hold, every arithmetic
side condition that is violated, becomes a distinct :class:`ExecError`
subclass rather than undefined behaviour.
"""

from __future__ import annotations


class RsmError(Exception):
    """Base class for every error raised by this package."""


# --------------------------------------------------------------------------
# Front-end errors


class ParseError(RsmError):
    """Malformed source text; carries the 1-based line/column of the fault."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class StaticError(RsmError):
    """A well-formedness violation found after parsing (duplicate names,
    unknown call targets, irreversible updates, misplaced power operands)."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class StoreFormatError(RsmError):
    """Malformed state file."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}")
        self.message = message
        self.line = line


# --------------------------------------------------------------------------
# Execution errors


class ExecError(RsmError):
    """Base class of runtime faults.

    ``kind`` is the stable machine-readable name (the subclass name) and
    ``location`` is the (line, column) of the statement that raised, when
    known.  Arithmetic-kernel faults start without a location; the
    interpreter attaches one as the error propagates out of a statement.
    """

    def __init__(self, message: str, location: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.location = location

    @property
    def kind(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        if self.location is not None:
            return f"{self.kind} at {self.location[0]}:{self.location[1]}: {self.message}"
        return f"{self.kind}: {self.message}"


class FiAssertionFailed(ExecError):
    """The fi predicate of a conditional disagreed with the branch taken."""


class FromAssertionFailed(ExecError):
    """A loop join-point assertion (entry predicate, or the implicit
    counter/bounds assertions of a counted loop) did not hold."""


class DelocalMismatch(ExecError):
    """A scoped value (local variable or by-value call argument) did not
    have the asserted value when its scope closed."""


class PopNonZeroTarget(ExecError):
    """pop into a location that does not currently hold zero."""


class IndexOutOfBounds(ExecError):
    """Array index outside the array, or pop from an empty stack."""


class UnboundName(ExecError):
    """Name not bound in the store, or not bound to a value of the kind the
    operation requires."""


class NonCoprimeModulus(ExecError):
    """Multiplicative inverse requested for an operand that shares a factor
    with the modulus."""


class OperandOutOfRange(ExecError):
    """Modular operand outside its required range (the injectivity side
    conditions 0 <= x < q, and 1 <= y < q for multiplication)."""


class WordOverflow(ExecError):
    """Arithmetic result outside the signed 64-bit word."""


# --------------------------------------------------------------------------
# Matcher input errors


class MatchInputError(RsmError):
    """Invalid search input (rejected before any searching happens)."""


class SymbolOutOfRange(MatchInputError):
    pass


class EmptyPattern(MatchInputError):
    pass


class PatternLongerThanText(MatchInputError):
    pass


class ShiftOutOfRange(MatchInputError):
    pass


class UnknownCorpusName(RsmError):
    pass
