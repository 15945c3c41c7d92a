"""Closed error taxonomy raised by every layer of the engine.

All errors derive from :class:`PrologError`, so a caller can catch the whole family with one clause. The concrete
class carries the taxonomy name in ``kind`` and an optional source location.
"""

from typing import NoReturn

from app.domain.schemas.types import ErrorKind


class PrologError(Exception):
    """Common runtime error that can be used for any Prolog error notification."""

    kind: ErrorKind = ErrorKind.PROLOG_ERROR

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ArityError(PrologError):
    """Raised when the term has no arity property, like a variable."""

    kind = ErrorKind.ARITY_ERROR


class CompoundExpectedError(PrologError):
    """Raised when a compound term is expected, e.g. asking an argument of an atomic term."""

    kind = ErrorKind.COMPOUND_EXPECTED_ERROR


class FunctorError(PrologError):
    """Raised when the term has no functor property, like variables and numbers."""

    kind = ErrorKind.FUNCTOR_ERROR


class IndicatorError(PrologError):
    """Raised when the term has no indicator."""

    kind = ErrorKind.INDICATOR_ERROR


class ListExpectedError(PrologError):
    """Raised when the expected term is a Prolog list."""

    kind = ErrorKind.LIST_EXPECTED_ERROR


class StructureExpectedError(PrologError):
    """Raised when the expected term is a Prolog structure."""

    kind = ErrorKind.STRUCTURE_EXPECTED_ERROR


class PrologSyntaxError(PrologError):
    """Raised when the source text does not follow the Prolog grammar."""

    kind = ErrorKind.SYNTAX_ERROR


class UnknownTermError(PrologError):
    """Raised when a term has no host equivalent, like a free variable."""

    kind = ErrorKind.UNKNOWN_TERM_ERROR


ERRORS: dict[ErrorKind, type[PrologError]] = {
    error.kind: error
    for error in (
        PrologError,
        ArityError,
        CompoundExpectedError,
        FunctorError,
        IndicatorError,
        ListExpectedError,
        StructureExpectedError,
        PrologSyntaxError,
        UnknownTermError,
    )
}


def raise_error(kind: ErrorKind, message: str, line: int | None = None, column: int | None = None) -> NoReturn:
    """Raise the error class registered for a taxonomy kind.

    Args:
        kind (ErrorKind): the taxonomy member
        message (str): human readable context
        line (int, optional): source line, when the error comes from text. Defaults to None.
        column (int, optional): source column. Defaults to None.

    Raises:
        PrologError: always, as the subclass mapped to ``kind``
    """
    raise ERRORS[kind](message, line=line, column=column)
