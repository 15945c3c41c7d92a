"""Entry point of the interop SDK: term constructors, parsing, conversion and engines behind one object."""

from pathlib import Path
from typing import Any, TextIO

from app.core.config import settings
from app.core.logging import PrologLogger
from app.core.settings.engine import EngineSettings
from app.domain.models import term as terms
from app.domain.models.clause import Clause
from app.domain.models.operator import ISO_OPERATORS, OperatorTable
from app.domain.models.term import (
    CUT,
    EMPTY,
    FAIL,
    FALSE,
    NIL,
    TRUE,
    Atom,
    Number,
    Reference,
    Structure,
    Term,
    Variable,
    new_number,
)
from app.domain.schemas.types import HostKind, PathType, TermType
from app.domain.services.converter import HostConverter
from app.domain.services.parser import PrologParser, SourceProgram
from app.domain.services.printer import TermPrinter
from app.infrastructure.resolution.engine import PrologEngine


class PrologProvider:
    """Factory of every SDK object.

    Host values passed where terms are expected are converted with the provider converter, so
    ``new_structure("parent", "pam", "bob")`` builds ``parent(pam, bob)``.

    Args:
        config (EngineSettings, optional): settings of the engines created. Defaults to the application settings.
        converter (HostConverter, optional): host converter. Defaults to a new one.
    """

    def __init__(self, config: EngineSettings | None = None, converter: HostConverter | None = None):
        self.config = config or settings.ENGINE
        self.converter = converter or HostConverter()
        self.operators = OperatorTable(ISO_OPERATORS)
        self.parser = PrologParser(self.operators)
        self.logger = PrologLogger(self)

    # information
    @property
    def name(self) -> str:
        """Engine name."""
        return self.config.ENGINE_NAME

    @property
    def version(self) -> str:
        """Engine version."""
        return self.config.ENGINE_VERSION

    @property
    def is_compliant(self) -> bool:
        """True when the engines implement ISO Prolog."""
        return self.config.ENGINE_ISO_COMPLIANT

    def get_logger(self) -> PrologLogger:
        """Leveled logger shared by the engines."""
        return self.logger

    def get_parser(self) -> PrologParser:
        """Parser reading with the provider operators."""
        return self.parser

    def get_converter(self) -> HostConverter:
        """Converter between host values and terms."""
        return self.converter

    # engines
    def new_engine(self, path: PathType | TextIO | None = None) -> PrologEngine:
        """New engine, consulting the program when a source is given."""
        return PrologEngine(path, config=self.config)

    # constructors
    def _term(self, value: Any) -> Term:
        return value if isinstance(value, Term) else self.converter.to_term(value)

    def new_atom(self, functor: str) -> Atom:
        """Atom, one layer of quotes is removed and constants are their singletons."""
        return terms.new_atom(functor)

    def new_integer(self, value: int | None = None) -> Number:
        """32 bit integer, zero without a value."""
        return new_number(TermType.INTEGER, value)

    def new_long(self, value: int | None = None) -> Number:
        """64 bit integer, zero without a value."""
        return new_number(TermType.LONG, value)

    def new_float(self, value: float | None = None) -> Number:
        """Single precision float, zero without a value."""
        return new_number(TermType.FLOAT, value)

    def new_double(self, value: float | None = None) -> Number:
        """Double precision float, zero without a value."""
        return new_number(TermType.DOUBLE, value)

    def new_variable(self, name: str | None = None, position: int = 0) -> Variable:
        """Named variable with its declaration order, anonymous without a name."""
        return terms.new_variable(name, position)

    def new_list(self, items: Any = (), tail: Any = None) -> Term:
        """List of terms or host values, a partial list when the tail is given."""
        return terms.new_list([self._term(item) for item in items], None if tail is None else self._term(tail))

    def new_structure(self, functor: str, *args: Any) -> Term:
        """Structure of terms or host values, an atom without arguments."""
        return terms.new_structure(functor, [self._term(arg) for arg in args])

    def new_expression(self, left: Any, operator: str, right: Any) -> Structure:
        """Infix expression checked against the provider operators."""
        return terms.new_expression(self._term(left), operator, self._term(right), self.operators)

    def new_reference(self, value: Any) -> Reference:
        """Reference with a fresh handle to the host value."""
        return terms.new_reference(value)

    # constants
    def prolog_nil(self) -> Atom:
        """The ``nil`` constant."""
        return NIL

    def prolog_true(self) -> Atom:
        """The ``true`` constant."""
        return TRUE

    def prolog_false(self) -> Atom:
        """The ``false`` constant."""
        return FALSE

    def prolog_fail(self) -> Atom:
        """The ``fail`` constant."""
        return FAIL

    def prolog_cut(self) -> Atom:
        """The cut ``!``."""
        return CUT

    def prolog_empty(self) -> Atom:
        """The empty list ``[]``."""
        return EMPTY

    def prolog_include(self, file: PathType) -> str:
        """Text of the directive including a file, e.g. ``:- include('family.pl').``."""
        directive = Clause.directive(Structure("include", (Atom(str(file)),)))
        return TermPrinter(self.operators).clause(directive)

    # parsing
    def parse_term(self, text: str) -> Term:
        """Parse one term."""
        return self.parser.parse_term(text)

    def parse_terms(self, text: str) -> list[Term]:
        """Parse comma separated terms."""
        return self.parser.parse_terms(text)

    def parse_clause(self, text: str) -> Clause:
        """Parse one clause."""
        return self.parser.parse_clause(text)

    def parse_list(self, text: str) -> Term:
        """Parse a list.

        Raises:
            ListExpectedError: when the text is not a list
        """
        return self.parser.parse_list(text)

    def parse_structure(self, text: str) -> Structure:
        """Parse a structure.

        Raises:
            StructureExpectedError: when the text is not a structure
        """
        return self.parser.parse_structure(text)

    def parse_program(self, source: str | Path | TextIO) -> SourceProgram:
        """Parse program text, a path or a reader into clauses and directives."""
        return self.parser.parse_program(source)

    # conversion
    def to_term(self, value: Any, kind: TermType | None = None) -> Term:
        """Host value as a term, optionally cast to the kind."""
        return self.converter.to_term(value, kind)

    def from_term(self, term: Term, kind: HostKind | None = None) -> Any:
        """Host value of a term, optionally of the host kind."""
        return self.converter.from_term(term, kind)

    def typed_conversion(self, value: Any, kind: TermType | HostKind) -> Any:
        """Convert toward the term kind or the host kind."""
        return self.converter.typed_conversion(value, kind)

    def to_term_array(self, values: Any) -> list[Term]:
        """Host sequence as terms."""
        return self.converter.to_term_array(values)

    def from_term_array(self, items: Any) -> list[Any]:
        """Terms as host values."""
        return self.converter.from_term_array(items)

    def to_term_matrix(self, rows: Any) -> list[list[Term]]:
        """Host rows as rows of terms."""
        return self.converter.to_term_matrix(rows)

    def to_object_lists(self, rows: Any) -> list[list[Any]]:
        """Rows of terms as host rows."""
        return self.converter.to_object_lists(rows)

    def to_term_map(self, mapping: Any) -> dict[str, Term]:
        """Host mapping with term values."""
        return self.converter.to_term_map(mapping)

    def to_object_map(self, mapping: Any) -> dict[str, Any]:
        """Term mapping with host values."""
        return self.converter.to_object_map(mapping)

    def to_term_map_array(self, mappings: Any) -> list[dict[str, Term]]:
        """Host mappings with term values."""
        return self.converter.to_term_map_array(mappings)

    def to_object_maps(self, mappings: Any) -> list[dict[str, Any]]:
        """Solution maps with host values."""
        return self.converter.to_object_maps(mappings)

    def __repr__(self) -> str:
        return f"PrologProvider(name={self.name!r}, version={self.version!r})"

