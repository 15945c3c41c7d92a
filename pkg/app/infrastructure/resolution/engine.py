"""Prolog engine: knowledge base lifecycle, program loading, introspection and query entry points."""

import os
from functools import cached_property
from pathlib import Path
from typing import TYPE_CHECKING, TextIO

from loguru import logger

from app.core.config import settings
from app.core.errors import PrologError
from app.core.logging import PrologLogger
from app.core.settings.engine import EngineSettings
from app.core.utils.files import write_source
from app.domain.models.clause import Clause, conjunction
from app.domain.models.indicator import Indicator
from app.domain.models.operator import ISO_OPERATORS, Operator, OperatorTable
from app.domain.models.term import Atom, Integer, Structure, Term
from app.domain.schemas.engine import EngineInfo
from app.domain.schemas.types import PathType
from app.domain.services.parser import PrologParser
from app.domain.services.printer import TermPrinter
from app.domain.services.unification import unify
from app.infrastructure.resolution.builtins import builtin_indicators
from app.infrastructure.resolution.knowledge import KnowledgeBase
from app.infrastructure.resolution.machine import Machine
from app.infrastructure.resolution.query import Query

if TYPE_CHECKING:
    from app.infrastructure.resolution.builders import ClauseBuilder, QueryBuilder

Source = PathType | TextIO
Goal = str | Term


class PrologEngine:
    """In memory Prolog engine.

    A string source is a file path. Programs are loaded atomically: the whole source, includes too, is parsed
    against a copy of the operator table before the knowledge base changes.

    Args:
        source (PathType | TextIO, optional): program consulted at creation. Defaults to None.
        indexing (bool, optional): first argument indexing, the setting when absent. Defaults to None.
        occurs_check (bool, optional): occurs check in unification, the setting when absent. Defaults to None.
        config (EngineSettings, optional): engine settings. Defaults to the application settings.
    """

    def __init__(
        self,
        source: Source | None = None,
        *,
        indexing: bool | None = None,
        occurs_check: bool | None = None,
        config: EngineSettings | None = None,
    ):
        self.config = config or settings.ENGINE
        self.indexing = self.config.ENGINE_INDEXING if indexing is None else indexing
        self.occurs_check = self.config.ENGINE_OCCURS_CHECK if occurs_check is None else occurs_check
        self.operators = OperatorTable(ISO_OPERATORS)
        self.parser = PrologParser(self.operators)
        self.knowledge = KnowledgeBase()
        self.logger = PrologLogger(self)
        if source is not None:
            self.consult(source)

    # coercion
    def _term(self, value: Goal) -> Term:
        if isinstance(value, str):
            return self.parser.parse_term(value)
        if not isinstance(value, Term):
            raise PrologError(f"Expected a term or a term text, found {value!r}")
        return value

    def _goal(self, goals: tuple[Goal, ...]) -> Term:
        if not goals:
            raise PrologError("A query needs at least one goal")
        return conjunction(self._term(goal) for goal in goals)

    def _clause(self, clause: "str | Term | Clause", body: tuple[Goal, ...]) -> Clause:
        if isinstance(clause, Clause):
            if body:
                raise PrologError("A clause object takes no extra body goals")
            result = clause
        elif isinstance(clause, str) and not body:
            result = Clause.from_term(self.parser.parse_term(clause))
        else:
            result = Clause.make(self._term(clause), [self._term(goal) for goal in body])
        if result.is_directive:
            raise PrologError(f"A directive is not a program clause: {result}")
        return result

    # knowledge base
    def asserta(self, clause: "str | Term | Clause", *body: Goal):
        """Add a clause at the front of its family unless a variant is already stored.

        Args:
            clause (str | Term | Clause): clause text, head term or clause
            *body (str | Term): body goals when the first argument is a head
        """
        self.knowledge.add(self._clause(clause, body), front=True)

    def assertz(self, clause: "str | Term | Clause", *body: Goal):
        """Add a clause at the back of its family unless a variant is already stored."""
        self.knowledge.add(self._clause(clause, body), front=False)

    def retract(self, clause: "str | Term | Clause", *body: Goal) -> bool:
        """Remove the first stored clause that unifies with the given one.

        Returns:
            bool: True when a clause was removed
        """
        return self.knowledge.retract(self._clause(clause, body))

    def abolish(self, functor: str, arity: int) -> bool:
        """Remove every clause of the predicate indicator."""
        removed = self.knowledge.abolish(Indicator(functor, arity))
        logger.debug(f"Abolish {functor}/{arity}: {removed}")
        return removed

    def clause(self, head: "str | Term | Clause", *body: Goal) -> bool:
        """Check that a stored clause unifies with the given head and body, without proving it."""
        return self.knowledge.contains(self._clause(head, body))

    def contains(self, *goals: Goal) -> bool:
        """Check that the goals have a solution."""
        with self.query(*goals) as query:
            return query.has_solution()

    def unify(self, left: Goal, right: Goal) -> bool:
        """Check that two terms unify, neither is changed."""
        return unify(self._term(left), self._term(right), occurs_check=self.occurs_check) is not None

    # program loading
    def consult(self, source: Source):
        """Replace the knowledge base with the program of a file or a reader.

        Raises:
            PrologSyntaxError: when the program is malformed, the knowledge base is unchanged
            PrologError: when the source can not be read
        """
        self._load(source, replace=True)

    def include(self, source: Source):
        """Merge the program of a file or a reader into the knowledge base."""
        self._load(source, replace=False)

    def _load(self, source: Source, replace: bool):
        operators = self.operators.copy()
        items = self._read(source, operators, frozenset())
        knowledge = KnowledgeBase() if replace else self.knowledge.copy()
        directives = []
        for item in items:
            if not item.is_directive:
                knowledge.add(item)
            elif not item.body.has_indicator("op", 3):
                directives.append(item.body)
        self.knowledge = knowledge
        self._set_operators(operators)
        logger.info(f"{'Consulted' if replace else 'Included'} {self._source_name(source)}: {knowledge.size()} clauses")
        for directive in directives:
            goal = directive.argument(0) if directive.has_indicator("initialization", 1) else directive
            try:
                if not self.contains(goal):
                    self.logger.warn(self, f"Directive {goal} failed")
            except PrologError as e:
                self.logger.warn(self, f"Directive {goal} raised an error: {e}", e)

    def _read(self, source: Source, operators: OperatorTable, seen: frozenset[Path]) -> list[Clause]:
        parser = PrologParser(operators)
        if isinstance(source, (str, os.PathLike)):
            path = Path(source).resolve()
            if path in seen:
                raise PrologError(f"Circular include of {path}")
            seen = seen | {path}
            base = path.parent
            program = parser.parse_program(path)
        else:
            base = Path.cwd()
            program = parser.parse_program(source)
        items: list[Clause] = []
        for item in program.items:
            if item.is_directive and item.body.has_indicator("include", 1):
                target = item.body.argument(0)
                if not target.is_atom():
                    raise PrologError(f"Malformed include directive: {item}")
                items.extend(self._read(self._include_path(base, target.functor), operators, seen))
            else:
                items.append(item)
        return items

    @staticmethod
    def _include_path(base: Path, name: str) -> Path:
        path = Path(name)
        if not path.is_absolute():
            path = base / path
        if not path.exists() and not path.suffix:
            path = path.with_suffix(".pl")
        return path

    @staticmethod
    def _source_name(source: Source) -> str:
        return str(source) if isinstance(source, (str, os.PathLike)) else type(source).__name__

    def _set_operators(self, operators: OperatorTable):
        self.operators = operators
        self.parser.operators = operators

    def program_text(self, listing: bool = False) -> str:
        """Program in canonical text: user operator directives, then every family in definition order.

        Args:
            listing (bool, optional): one body goal per line. Defaults to False.
        """
        printer = TermPrinter(self.operators)
        lines = []
        for operator in self.operators.user_defined():
            directive = Structure("op", (Integer(operator.priority), Atom(operator.specifier.value), Atom(operator.name)))
            lines.append(printer.clause(Clause.directive(directive)))
        for family in self.knowledge.families():
            if not family.clauses:
                indicator = Structure("/", (Atom(family.indicator.functor), Integer(family.indicator.arity)))
                lines.append(printer.clause(Clause.directive(Structure("dynamic", (indicator,)))))
            lines.extend(printer.clause(compiled.clause, listing=listing) for compiled in family.clauses)
        return "".join(f"{line}\n" for line in lines)

    def listing(self) -> str:
        """Program text with one body goal per line."""
        return self.program_text(listing=True)

    def persist(self, sink: Source):
        """Write the program so that consulting it gives back an equal knowledge base.

        Raises:
            PrologError: when the sink can not be written
        """
        write_source(sink, self.program_text())
        logger.info(f"Persisted {self.get_program_size()} clauses to {self._source_name(sink)}")

    # operators
    def operator(self, priority: int, specifier: str, name: str) -> Operator:
        """Define an operator, priority 0 removes it.

        Raises:
            PrologError: when the priority is not between 0 and 1200 or the specifier is unknown
        """
        return self.operators.define(priority, specifier, name)

    def current_operator(self, priority: int, specifier: str, name: str) -> bool:
        """Check that exactly this operator is defined."""
        return self.operators.contains(priority, specifier, name)

    def current_operators(self) -> set[Operator]:
        """Every defined operator."""
        return self.operators.operators()

    # predicates
    def current_predicate(self, functor: str, arity: int) -> bool:
        """Check that the indicator is user defined or built in."""
        return Indicator(functor, arity) in self.current_predicates()

    def current_predicates(self) -> set[Indicator]:
        """User defined and built-in indicators."""
        return self.get_predicates() | self.get_builtins()

    def get_builtins(self) -> set[Indicator]:
        """Built-in indicators."""
        return builtin_indicators()

    def get_predicates(self) -> set[Indicator]:
        """User defined indicators."""
        return set(self.knowledge.indicators())

    def get_program_clauses(self) -> list[Clause]:
        """Every stored clause in program order."""
        return self.knowledge.clauses()

    def get_program_map(self) -> dict[str, list[Clause]]:
        """Indicator text to clause list of the non empty families."""
        return {
            str(family.indicator): [compiled.clause for compiled in family.clauses]
            for family in self.knowledge.families()
            if family.clauses
        }

    def get_program_size(self) -> int:
        """Number of stored clauses."""
        return self.knowledge.size()

    def is_program_empty(self) -> bool:
        """True when no clause is stored."""
        return self.knowledge.is_empty()

    # queries
    def new_machine(self) -> Machine:
        """Resolution machine over the current knowledge base."""
        return Machine(self.knowledge, self.operators, self.indexing, self.occurs_check, logger=self.logger)

    def query(self, *goals: Goal) -> Query:
        """Open a query over the conjunction of the goals."""
        return Query(self, self._goal(goals))

    def query_one(self, *goals: Goal) -> dict[str, Term]:
        """First solution, empty when the goals fail."""
        with self.query(*goals) as query:
            return query.one()

    def query_n(self, n: int, *goals: Goal) -> list[dict[str, Term]]:
        """First n solutions."""
        with self.query(*goals) as query:
            return query.n_variables_solutions(n)

    def query_all(self, *goals: Goal) -> list[dict[str, Term]]:
        """Every solution in discovery order."""
        with self.query(*goals) as query:
            return query.all()

    def new_query_builder(self) -> "QueryBuilder":
        """Fluent builder of queries over this engine."""
        from app.infrastructure.resolution.builders import QueryBuilder

        return QueryBuilder(self)

    def new_clause_builder(self) -> "ClauseBuilder":
        """Fluent builder of clauses over this engine."""
        from app.infrastructure.resolution.builders import ClauseBuilder

        return ClauseBuilder(self)

    def dispose(self):
        """Clear the program in memory."""
        self.knowledge.clear()
        logger.debug("Engine disposed")

    # information
    @cached_property
    def info(self) -> EngineInfo:
        """Engine and host description."""
        return EngineInfo(
            name=self.config.ENGINE_NAME,
            version=self.config.ENGINE_VERSION,
            license=self.config.ENGINE_LICENSE,
            iso_compliant=self.config.ENGINE_ISO_COMPLIANT,
        )

    def get_name(self) -> str:
        """Engine name from the settings."""
        return self.info.name

    def get_version(self) -> str:
        """Engine version from the settings."""
        return self.info.version

    def get_license(self) -> str:
        """License of the engine."""
        return self.info.license

    def get_os_name(self) -> str:
        """Name of the operating system the engine runs on."""
        return self.info.os_name

    def get_os_arch(self) -> str:
        """Machine architecture the engine runs on."""
        return self.info.os_arch

    def is_iso_compliant(self) -> bool:
        """True when the engine implements ISO Prolog."""
        return self.info.iso_compliant

    def run_on_linux(self) -> bool:
        """True on Linux."""
        return self.info.run_on_linux

    def run_on_osx(self) -> bool:
        """True on macOS."""
        return self.info.run_on_osx

    def run_on_windows(self) -> bool:
        """True on Windows."""
        return self.info.run_on_windows

    def __repr__(self) -> str:
        return f"PrologEngine(name={self.get_name()!r}, clauses={self.get_program_size()})"
