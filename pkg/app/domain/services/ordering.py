"""Standard order of terms.

Classes are ordered Variables < Atoms < Numbers < Compounds. Atoms compare alphabetically, numbers by value with
ties broken by width (integer < long < float < double), variables by position then name, and compounds by arity,
then functor, then arguments from left to right. Placing atoms before numbers differs from the ISO order.
"""

from functools import cmp_to_key

from app.domain.models.term import Atom, Compound, Number, Term, Variable
from app.domain.schemas.types import TermType

_WIDTH = {TermType.INTEGER: 0, TermType.LONG: 1, TermType.FLOAT: 2, TermType.DOUBLE: 3}


def _rank(term: Term) -> int:
    if isinstance(term, Variable):
        return 0
    if isinstance(term, Atom):
        return 1
    if isinstance(term, Number):
        return 2
    return 3


def _sign(a: object, b: object) -> int:
    return (a > b) - (a < b)  # type: ignore[operator]


def _compare_atomic(a: Term, b: Term) -> int:
    if isinstance(a, Variable) and isinstance(b, Variable):
        if a.key == b.key:
            return 0
        return _sign(
            (a.position, a.is_anonymous(), a.name, a.serial),
            (b.position, b.is_anonymous(), b.name, b.serial),
        )
    if isinstance(a, Atom) and isinstance(b, Atom):
        return _sign(a.functor, b.functor)
    if isinstance(a, Number) and isinstance(b, Number):
        return _sign(a.value, b.value) or _sign(_WIDTH[a.type], _WIDTH[b.type])
    return 0


def compare_terms(left: Term, right: Term) -> int:
    """Compare two terms in the standard order.

    Args:
        left (Term): first term
        right (Term): second term

    Returns:
        int: -1 when left comes first, 0 when they are equal, 1 otherwise
    """
    pending = [(left, right)]
    while pending:
        a, b = pending.pop()
        if a is b:
            continue
        order = _sign(_rank(a), _rank(b))
        if order:
            return order
        if isinstance(a, Compound):
            order = _sign(a.arity, b.arity) or _sign(a.functor, b.functor)
            if order:
                return order
            pending.extend(reversed(list(zip(a.arguments, b.arguments, strict=True))))
            continue
        order = _compare_atomic(a, b)
        if order:
            return order
    return 0


def sort_terms(terms: list[Term]) -> list[Term]:
    """Sort terms in the standard order, duplicates are kept."""
    return sorted(terms, key=cmp_to_key(compare_terms))
