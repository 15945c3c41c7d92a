from collections.abc import Iterable, Iterator

from app.core.errors import PrologError
from app.domain.models.indicator import Indicator
from app.domain.models.term import TRUE, Atom, ListTerm, Structure, Term


def conjunction(goals: Iterable[Term]) -> Term:
    """Fold goals into a right nested ``,``/2 term, ``true`` when empty."""
    items = list(goals)
    if not items:
        return TRUE
    result = items[-1]
    for goal in reversed(items[:-1]):
        result = Structure(",", (goal, result))
    return result


def flatten_conjunction(body: Term) -> list[Term]:
    """Goals of a right nested ``,``/2 term, in order."""
    goals = []
    while isinstance(body, Structure) and body.functor == "," and body.arity == 2:
        goals.append(body.arguments[0])
        body = body.arguments[1]
    goals.append(body)
    return goals


class Clause:
    """Head and body pair, or a directive when the head is absent.

    The functor and arity of a clause are the ones of its head. Facts have the ``true`` body.
    """

    __slots__ = ("_head", "_body")

    def __init__(self, head: Term | None, body: Term = TRUE):
        if head is not None and not isinstance(head, (Atom, Structure)):
            if isinstance(head, ListTerm):
                raise PrologError(f"A list can not be a clause head: {head}")
            raise PrologError(f"The clause head must be an atom or a structure: {head}")
        self._head = head
        self._body = body

    @classmethod
    def make(cls, head: Term, body: Iterable[Term] = ()) -> "Clause":
        """Build a clause from the head and the body goals."""
        return cls(head, conjunction(body))

    @classmethod
    def directive(cls, goal: Term) -> "Clause":
        """Build a directive ``:- goal``."""
        return cls(None, goal)

    @classmethod
    def from_term(cls, term: Term) -> "Clause":
        """Read a clause out of a ``:-``/2, ``:-``/1 or head term."""
        if isinstance(term, Structure) and term.functor == ":-":
            if term.arity == 2:
                return cls(term.arguments[0], term.arguments[1])
            if term.arity == 1:
                return cls.directive(term.arguments[0])
        return cls(term)

    @property
    def head(self) -> Term:
        """Head of the clause."""
        if self._head is None:
            raise PrologError("A directive has no head")
        return self._head

    @property
    def body(self) -> Term:
        """Body of the clause, ``true`` for facts."""
        return self._body

    @property
    def body_array(self) -> tuple[Term, ...]:
        """Body goals in order, empty for facts."""
        if self.is_fact:
            return ()
        return tuple(flatten_conjunction(self._body))

    def body_iterator(self) -> Iterator[Term]:
        """Iterate the body goals."""
        return iter(self.body_array)

    @property
    def functor(self) -> str:
        """Head functor, ``:-`` for directives."""
        return self._head.functor if self._head is not None else ":-"

    @property
    def arity(self) -> int:
        """Head arity, 1 for directives."""
        return self._head.arity if self._head is not None else 1

    @property
    def prolog_indicator(self) -> Indicator:
        """Indicator of the clause family."""
        return Indicator(self.functor, self.arity)

    @property
    def indicator(self) -> str:
        """Indicator text of the clause family."""
        return str(self.prolog_indicator)

    @property
    def arguments(self) -> tuple[Term, ...]:
        """Head arguments."""
        return self.head.arguments

    def argument(self, index: int) -> Term:
        """Head argument at a zero based position."""
        return self.head.argument(index)

    def has_indicator(self, functor: str, arity: int) -> bool:
        """Check the clause functor and arity."""
        return self.functor == functor and self.arity == arity

    @property
    def is_directive(self) -> bool:
        """True for ``:- goal`` clauses."""
        return self._head is None

    @property
    def is_fact(self) -> bool:
        """True when the body is ``true``."""
        return self._head is not None and self._body.is_true()

    @property
    def is_rule(self) -> bool:
        """True when the body is not ``true``."""
        return self._head is not None and not self._body.is_true()

    def get_term(self) -> Term:
        """Term form of the clause: ``H :- B``, ``H`` for facts, ``:- B`` for directives."""
        if self._head is None:
            return Structure(":-", (self._body,))
        if self.is_fact:
            return self._head
        return Structure(":-", (self._head, self._body))

    def unify(self, other: "Clause") -> bool:
        """Check that the two clauses unify, head and body together."""
        return self.get_term().unify(other.get_term())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clause):
            return NotImplemented
        return self._head == other._head and self._body == other._body

    def __hash__(self) -> int:
        return hash((self._head, self._body))

    def __str__(self) -> str:
        from app.domain.services.printer import format_clause

        return format_clause(self)

    def __repr__(self) -> str:
        return f"Clause({self})"
