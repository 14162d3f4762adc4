"""Exception types shared across the library.

The CLI maps these onto exit codes (see ``tatekit.cli``): domain and
backend errors are "math" failures, precision errors mean the stored
precision cannot decide the question, and exhausted searches mean a
bounded search ended without a witness.
"""


class TatekitError(Exception):
    """Base class for all library errors."""


class BackendMismatch(TatekitError):
    """Operands live in different field backends, lattices, or arities."""


class DomainError(TatekitError):
    """Input lies outside an operation's mathematical domain."""


class PrecisionError(TatekitError):
    """The stored precision (ball or slack) cannot decide the question."""


class SearchExhausted(TatekitError):
    """A bounded search ended without finding a witness."""


class ParseError(TatekitError):
    """Syntax error in a series literal, with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column
