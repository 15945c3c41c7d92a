# noqa: A005
import os
from enum import Enum
from pathlib import Path
from typing import Union

PathType = Union[str, os.PathLike, Path]


class ExtendedEnum(Enum):
    """Extends the enum class to be able to return the Enum names.

    Args:
        Enum (Enum): Extends Enum type
    """

    @classmethod
    def options(cls) -> str:
        """Get the enum values a semicolon separated string.

        Returns:
            str: Semicolon separated enums
        """
        return "; ".join([str(type(e).__name__) + "." + e.name for e in cls])

    @classmethod
    def list_options(cls) -> list:
        """Get the enum values as a list of strings.

        Returns:
            list: List of enum values
        """
        return list(cls.__members__.keys())

    @classmethod
    def set_options(cls) -> set:
        """Get the enum values as a set of strings.

        Best performance to test if value in set of options.

        Returns:
            set: List of enum values
        """
        return set(cls)

    @classmethod
    def values(cls) -> list:
        """Get the raw enum values in declaration order.

        Returns:
            list: List of enum raw values
        """
        return [e.value for e in cls]


class ErrorKind(ExtendedEnum):
    """Closed set of error kinds raised by the engine."""

    ARITY_ERROR = "ArityError"
    COMPOUND_EXPECTED_ERROR = "CompoundExpectedError"
    FUNCTOR_ERROR = "FunctorError"
    INDICATOR_ERROR = "IndicatorError"
    LIST_EXPECTED_ERROR = "ListExpectedError"
    PROLOG_ERROR = "PrologError"
    STRUCTURE_EXPECTED_ERROR = "StructureExpectedError"
    SYNTAX_ERROR = "SyntaxError"
    UNKNOWN_TERM_ERROR = "UnknownTermError"


class TermType(ExtendedEnum):
    """Variant tag of a term.

    - TermType.NIL, TRUE, FAIL, CUT, EMPTY_LIST -> special constants, atoms with a reserved functor.
    - TermType.INTEGER, LONG -> integral numbers of 32 and 64 bits.
    - TermType.FLOAT, DOUBLE -> floating numbers of single and double precision.
    """

    ATOM = 1
    INTEGER = 2
    LONG = 3
    FLOAT = 4
    DOUBLE = 5
    VARIABLE = 6
    LIST = 7
    STRUCTURE = 8
    REFERENCE = 9
    NIL = 10
    TRUE = 11
    FAIL = 12
    CUT = 13
    EMPTY_LIST = 14


class Specifier(ExtendedEnum):
    """Operator associativity and position."""

    XFX = "xfx"
    XFY = "xfy"
    YFX = "yfx"
    FY = "fy"
    FX = "fx"
    XF = "xf"
    YF = "yf"

    @property
    def is_prefix(self) -> bool:
        """Check if the specifier describes a prefix operator."""
        return self in (Specifier.FY, Specifier.FX)

    @property
    def is_infix(self) -> bool:
        """Check if the specifier describes an infix operator."""
        return len(self.value) == 3

    @property
    def is_postfix(self) -> bool:
        """Check if the specifier describes a postfix operator."""
        return self in (Specifier.XF, Specifier.YF)


class LogLevel(ExtendedEnum):
    """Logger levels mapped onto the loguru level names.

    - LogLevel.TRACE -> finest
    - LogLevel.DEBUG -> fine
    - LogLevel.INFO -> info
    - LogLevel.WARN -> warning
    - LogLevel.ERROR -> severe
    """

    TRACE = "TRACE"
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARN = "WARNING"
    ERROR = "ERROR"

    @classmethod
    def parse(cls, level: str) -> "LogLevel":
        """Resolve a level from its short name (``warn``) or its loguru name (``WARNING``)."""
        key = level.strip().upper()
        for member in cls:
            if key in (member.name, member.value):
                return member
        raise ValueError(f"Unknown log level: {level}, options: {cls.options()}")


class HostKind(ExtendedEnum):
    """Host value kinds a term can be converted to with a typed conversion."""

    NULL = 1
    BOOLEAN = 2
    TEXT = 3
    BYTE = 4
    SHORT = 5
    CHAR = 6
    INTEGER = 7
    LONG = 8
    FLOAT = 9
    DOUBLE = 10
    SEQUENCE = 11
    OBJECT = 12


class QueryState(ExtendedEnum):
    """Lifecycle of a query cursor."""

    OPEN = "open"
    EXHAUSTED = "exhausted"
    DISPOSED = "disposed"


class ReportFormat(ExtendedEnum):
    """Output format of the benchmark report."""

    TABLE = "table"
    CSV = "csv"


class BenchmarkName(ExtendedEnum):
    """Names of the benchmark programs of the suite."""

    BORESEA = "boresea"
    CHOICE_POINT = "choice_point"
    CHOICE_POINT_0ARG = "choice_point_0arg"
    BACKTRACK1 = "backtrack1"
    BACKTRACK2 = "backtrack2"
    CUT_100_TIMES = "cut_100_times"
    DEREFERENCE = "dereference"
    ENVIRONMENT = "environment"
    ENVIRONMENT_0ARG = "environment_0arg"
    INDEX_CLAUSE = "index_clause"
    CREATE_LIST = "create_list"
    CREATE_STRUCT = "create_struct"
    MATCH_LIST = "match_list"
    MATCH_STRUCT = "match_struct"
    UNIFICATION = "unification"
    BENCH_QUERY = "bench_query"
    BENCH_QUERY_ALL = "bench_query_all"
