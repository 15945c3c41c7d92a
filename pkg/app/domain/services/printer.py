"""Canonical printing of terms and clauses.

The printed text is the contract of persist and consult: for every ground term whose numbers have the canonical
width (integers that fit 32 bits, longs that do not, doubles) parsing the printed text gives back an equal term.
Operator atoms and complex atoms are quoted, and operator terms are parenthesized only when their priority exceeds
the room left by the context.
"""

import numpy as np

from app.domain.models.clause import Clause
from app.domain.models.operator import ARGUMENT_PRIORITY, MAX_PRIORITY, ISO_OPERATORS, Operator, OperatorTable
from app.domain.models.term import (
    SIMPLE_ATOM,
    Atom,
    Double,
    Float,
    ListTerm,
    Number,
    Reference,
    Structure,
    Term,
    Variable,
)

SYMBOL_CHARS = frozenset("+-*/\\^<>=~:.?@#&$")
SOLO_ATOMS = frozenset({"[]", "!"})
SPACED_OPERATORS = frozenset({":-", "-->"})

_ESCAPES = {"\\": "\\\\", "'": "\\'", "\n": "\\n", "\t": "\\t"}

_DEFAULT_TABLE = OperatorTable(ISO_OPERATORS)


def quote(name: str) -> str:
    """Quote an atom name, escaping backslashes, quotes, newlines and tabs."""
    return "'" + "".join(_ESCAPES.get(char, char) for char in name) + "'"


def format_float(value: float) -> str:
    """Float text that always reads back as a float literal, e.g. ``1.0e-05``."""
    text = repr(value)
    mantissa, _, exponent = text.partition("e")
    if "." not in mantissa:
        mantissa += ".0"
    return mantissa + ("e" + exponent if exponent else "")


class TermPrinter:
    """Print terms with the operator table of an engine."""

    def __init__(self, operators: OperatorTable | None = None):
        self.operators = operators if operators is not None else _DEFAULT_TABLE

    def atom(self, name: str) -> str:
        """Atom text, quoted when it is complex or an operator name."""
        if name in SOLO_ATOMS:
            return name
        if SIMPLE_ATOM.match(name) and not self.operators.is_operator(name):
            return name
        return quote(name)

    @staticmethod
    def functor(name: str) -> str:
        """Functor text in functional notation ``name(...)``."""
        if SIMPLE_ATOM.match(name):
            return name
        return quote(name)

    @staticmethod
    def number(term: Number) -> str:
        """Number text."""
        if isinstance(term, Float):
            return format_float(float(str(np.float32(term.value))))
        if isinstance(term, Double):
            return format_float(term.value)
        return str(term.value)

    def format(self, term: Term, max_priority: int = MAX_PRIORITY) -> str:
        """Canonical text of a term.

        Args:
            term (Term): term to print
            max_priority (int, optional): room left by the context. Defaults to 1200.

        Returns:
            str: the text
        """
        if isinstance(term, Atom):
            return self.atom(term.functor)
        if isinstance(term, Number):
            return self.number(term)
        if isinstance(term, Variable):
            return term.name
        if isinstance(term, Reference):
            return f"@({term.handle})"
        if isinstance(term, ListTerm):
            return self._list(term)
        if isinstance(term, Structure):
            return self._structure(term, max_priority)
        # runtime cells and other foreign objects
        return str(term)

    def _list(self, term: ListTerm) -> str:
        items = [self.format(item, ARGUMENT_PRIORITY) for item in term]
        tail = term.last_tail()
        text = "[" + ",".join(items)
        if not tail.is_empty_list():
            text += "|" + self.format(tail, ARGUMENT_PRIORITY)
        return text + "]"

    def _structure(self, term: Structure, max_priority: int) -> str:
        name = term.functor
        arguments = term.arguments
        operator: Operator | None = None
        if len(arguments) == 2:
            operator = self.operators.infix(name)
            if operator is not None:
                left = self.format(arguments[0], operator.left_max)
                right = self.format(arguments[1], operator.right_max)
                return self._wrap(self._infix(left, name, right), operator, max_priority)
        elif len(arguments) == 1:
            operator = self.operators.prefix(name)
            if operator is not None:
                operand = self.format(arguments[0], operator.right_max)
                return self._wrap(f"{name} {operand}", operator, max_priority)
            operator = self.operators.postfix(name)
            if operator is not None:
                operand = self.format(arguments[0], operator.left_max)
                return self._wrap(self._infix(operand, name, ""), operator, max_priority)
        inner = ",".join(self.format(argument, ARGUMENT_PRIORITY) for argument in arguments)
        return f"{self.functor(name)}({inner})"

    @staticmethod
    def _wrap(text: str, operator: Operator, max_priority: int) -> str:
        return f"({text})" if operator.priority > max_priority else text

    @staticmethod
    def _infix(left: str, name: str, right: str) -> str:
        if name == ",":
            return f"{left},{right}"
        if name in SPACED_OPERATORS or name[0].isalpha():
            return f"{left} {name} {right}" if right else f"{left} {name}"
        before = " " if left and left[-1] in SYMBOL_CHARS else ""
        after = " " if right and (right[0] in SYMBOL_CHARS or right[0] == "(") else ""
        return f"{left}{before}{name}{after}{right}"

    def clause(self, clause: Clause, listing: bool = False) -> str:
        """Clause text terminated by a period.

        Args:
            clause (Clause): clause to print
            listing (bool, optional): put each body goal on its own indented line. Defaults to False.

        Returns:
            str: the text
        """
        if clause.is_directive:
            return f":- {self.format(clause.body, MAX_PRIORITY - 1)}."
        head = self.format(clause.head, MAX_PRIORITY - 1)
        if clause.is_fact:
            return f"{head}."
        goals = [self.format(goal, ARGUMENT_PRIORITY) for goal in clause.body_array]
        if listing:
            body = ",\n    ".join(goals)
            return f"{head} :-\n    {body}."
        return f"{head} :- {','.join(goals)}."


def format_term(term: Term, operators: OperatorTable | None = None) -> str:
    """Canonical text of a term with the given (or ISO core) operator table."""
    return TermPrinter(operators).format(term)


def format_clause(clause: Clause, operators: OperatorTable | None = None, listing: bool = False) -> str:
    """Canonical text of a clause, terminated by a period."""
    return TermPrinter(operators).clause(clause, listing=listing)
