"""Fluent builders of queries and clauses.

A draft is a list of disjuncts, each a list of conjuncts. ``comma`` extends the last disjunct and ``semicolon``
opens a new one, so ``begin(a).comma(b).semicolon(c)`` is ``a,b;c``: the disjunction binds looser, like in text.
Builders reset their draft after each action and can be reused.
"""

from typing import TYPE_CHECKING

from app.core.errors import PrologError
from app.domain.models.clause import Clause, conjunction
from app.domain.models.term import Structure, Term, new_expression
from app.domain.services.printer import TermPrinter

if TYPE_CHECKING:
    from app.infrastructure.resolution.engine import PrologEngine
    from app.infrastructure.resolution.query import Query

Operand = str | Term


def disjunction(goals: list[Term]) -> Term:
    """Fold goals into a right nested ``;``/2 term."""
    result = goals[-1]
    for goal in reversed(goals[:-1]):
        result = Structure(";", (goal, result))
    return result


class _Builder:
    def __init__(self, engine: "PrologEngine"):
        self._engine = engine
        self._disjuncts: list[list[Term]] = []

    def _term(self, term: Operand, operator: str | None = None, right: Operand | None = None) -> Term:
        value = self._coerce(term)
        if operator is None:
            return value
        if right is None:
            raise PrologError(f"The operator {operator} needs a right operand")
        return new_expression(value, operator, self._coerce(right), self._engine.operators)

    def _coerce(self, term: Operand) -> Term:
        if isinstance(term, str):
            return self._engine.parser.parse_term(term)
        if not isinstance(term, Term):
            raise PrologError(f"Expected a term or a term text, found {term!r}")
        return term

    def _body(self) -> Term:
        return disjunction([conjunction(conjuncts) for conjuncts in self._disjuncts])

    def _printer(self) -> TermPrinter:
        return TermPrinter(self._engine.operators)


class QueryBuilder(_Builder):
    """Build a query goal by goal: ``begin`` then any ``comma`` and ``semicolon``, then ``query``."""

    def begin(self, term: Operand, operator: str | None = None, right: Operand | None = None) -> "QueryBuilder":
        """Set the first goal, ``begin(X, "is", "5+3")`` builds the expression ``X is 5+3``.

        Raises:
            PrologError: when the draft was already started
        """
        if self._disjuncts:
            raise PrologError("The query was already started with begin")
        self._disjuncts = [[self._term(term, operator, right)]]
        return self

    def _started(self):
        if not self._disjuncts:
            raise PrologError("The query must start with begin")

    def comma(self, term: Operand, operator: str | None = None, right: Operand | None = None) -> "QueryBuilder":
        """Append a goal in conjunction."""
        self._started()
        self._disjuncts[-1].append(self._term(term, operator, right))
        return self

    def semicolon(self, term: Operand, operator: str | None = None, right: Operand | None = None) -> "QueryBuilder":
        """Append a goal in disjunction."""
        self._started()
        self._disjuncts.append([self._term(term, operator, right)])
        return self

    def get_query_term(self) -> Term:
        """Goal of the draft."""
        self._started()
        return self._body()

    def get_query_string(self) -> str:
        """Goal of the draft in canonical text."""
        return self._printer().format(self.get_query_term())

    def query(self) -> "Query":
        """Open a query over the draft goal and reset the builder."""
        goal = self.get_query_term()
        self.reset()
        return self._engine.query(goal)

    def reset(self):
        """Discard the draft."""
        self._disjuncts = []

    def __str__(self) -> str:
        return self.get_query_string() if self._disjuncts else ""


class ClauseBuilder(_Builder):
    """Build a clause: ``begin`` with the head, an optional ``neck`` with the first body goal, then goals."""

    def __init__(self, engine: "PrologEngine"):
        super().__init__(engine)
        self._head: Term | None = None

    def begin(self, term: Operand, operator: str | None = None, right: Operand | None = None) -> "ClauseBuilder":
        """Set the clause head.

        Raises:
            PrologError: when the head is already set
        """
        if self._head is not None:
            raise PrologError("The clause was already started with begin")
        self._head = self._term(term, operator, right)
        return self

    def neck(self, term: Operand, operator: str | None = None, right: Operand | None = None) -> "ClauseBuilder":
        """Set the first body goal.

        Raises:
            PrologError: before begin, or when the body was already started
        """
        if self._head is None:
            raise PrologError("The clause head must be set with begin before neck")
        if self._disjuncts:
            raise PrologError("The clause body was already started with neck")
        self._disjuncts = [[self._term(term, operator, right)]]
        return self

    def _necked(self):
        if self._head is None:
            raise PrologError("The clause must start with begin")
        if not self._disjuncts:
            raise PrologError("The clause body must start with neck")

    def comma(self, term: Operand, operator: str | None = None, right: Operand | None = None) -> "ClauseBuilder":
        """Append a body goal in conjunction."""
        self._necked()
        self._disjuncts[-1].append(self._term(term, operator, right))
        return self

    def semicolon(self, term: Operand, operator: str | None = None, right: Operand | None = None) -> "ClauseBuilder":
        """Append a body goal in disjunction."""
        self._necked()
        self._disjuncts.append([self._term(term, operator, right)])
        return self

    def get_clause(self) -> Clause:
        """Clause of the draft, a fact when neck was not called."""
        if self._head is None:
            raise PrologError("The clause must start with begin")
        if not self._disjuncts:
            return Clause(self._head)
        return Clause(self._head, self._body())

    def get_clause_string(self) -> str:
        """Clause of the draft in canonical text."""
        return self._printer().clause(self.get_clause())

    def _take(self) -> Clause:
        clause = self.get_clause()
        self.reset()
        return clause

    def asserta(self):
        """Add the clause at the front of its family."""
        self._engine.asserta(self._take())

    def assertz(self):
        """Add the clause at the back of its family."""
        self._engine.assertz(self._take())

    def clause(self) -> bool:
        """Check that the clause is stored."""
        return self._engine.clause(self._take())

    def retract(self) -> bool:
        """Remove the first stored clause unifying with the draft."""
        return self._engine.retract(self._take())

    def reset(self):
        """Discard the draft."""
        self._head = None
        self._disjuncts = []

    def __str__(self) -> str:
        return self.get_clause_string() if self._head is not None else ""
