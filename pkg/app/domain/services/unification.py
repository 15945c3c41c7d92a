"""Substitution based unification over immutable terms.

The functions here never modify a term. A substitution is a plain dictionary from variables to terms; bindings
may chain, ``walk`` follows them.
"""

from collections.abc import Iterable

from app.domain.models.term import Atom, ListTerm, Number, Reference, Structure, Term, Variable

Substitution = dict[Variable, Term]


def walk(term: Term, substitution: Substitution) -> Term:
    """Follow variable bindings until an unbound variable or a non variable term."""
    while isinstance(term, Variable):
        bound = substitution.get(term)
        if bound is None:
            return term
        term = bound
    return term


def occurs(variable: Variable, term: Term, substitution: Substitution) -> bool:
    """Check if the variable appears inside the term under the substitution."""
    stack = [term]
    while stack:
        current = walk(stack.pop(), substitution)
        if isinstance(current, Variable):
            if current == variable:
                return True
        elif isinstance(current, (Structure, ListTerm)):
            stack.extend(current.arguments)
    return False


def unify(
    left: Term, right: Term, substitution: Substitution | None = None, occurs_check: bool = False
) -> Substitution | None:
    """Most general unifier of two terms.

    Args:
        left (Term): first term
        right (Term): second term
        substitution (Substitution, optional): bindings to extend, left untouched. Defaults to None.
        occurs_check (bool, optional): reject bindings that would build a cyclic term. Defaults to False.

    Returns:
        Substitution | None: the extended substitution, None when the terms do not unify
    """
    bindings: Substitution = dict(substitution) if substitution else {}
    stack = [(left, right)]
    while stack:
        a, b = stack.pop()
        a = walk(a, bindings)
        b = walk(b, bindings)
        if a is b:
            continue
        if isinstance(a, Variable):
            if isinstance(b, Variable) and a.key == b.key:
                continue
            if occurs_check and occurs(a, b, bindings):
                return None
            bindings[a] = b
        elif isinstance(b, Variable):
            if occurs_check and occurs(b, a, bindings):
                return None
            bindings[b] = a
        elif isinstance(a, Atom):
            if not isinstance(b, Atom) or a.functor != b.functor:
                return None
        elif isinstance(a, Number):
            if not isinstance(b, Number) or a.integral != b.integral or a.value != b.value:
                return None
        elif isinstance(a, Reference):
            if not isinstance(b, Reference) or a.handle != b.handle:
                return None
        elif isinstance(a, ListTerm):
            if not isinstance(b, ListTerm):
                return None
            stack.append((a.tail, b.tail))
            stack.append((a.head, b.head))
        elif isinstance(a, Structure):
            if not isinstance(b, Structure) or a.functor != b.functor or a.arity != b.arity:
                return None
            stack.extend(zip(a.arguments, b.arguments, strict=True))
        else:
            return None
    return bindings


def substitute(term: Term, substitution: Substitution) -> Term:
    """Apply a substitution, replacing every bound variable by its value."""
    term = walk(term, substitution)
    if isinstance(term, ListTerm):
        items = []
        current: Term = term
        while isinstance(current, ListTerm):
            items.append(substitute(current.head, substitution))
            current = walk(current.tail, substitution)
        result = substitute(current, substitution) if not isinstance(current, ListTerm) else current
        for item in reversed(items):
            result = ListTerm(item, result)
        return result
    if isinstance(term, Structure):
        return Structure(term.functor, tuple(substitute(argument, substitution) for argument in term.arguments))
    return term


def variables_of(terms: Iterable[Term]) -> list[Variable]:
    """Variables of the terms in first occurrence order, without duplicates."""
    seen: dict[Variable, None] = {}
    for root in terms:
        stack = [root]
        while stack:
            current = stack.pop()
            if isinstance(current, Variable):
                seen.setdefault(current, None)
            elif isinstance(current, (Structure, ListTerm)):
                stack.extend(reversed(current.arguments))
    return list(seen)


def rename(term: Term, renaming: dict[Variable, Variable]) -> Term:
    """Copy a term replacing its variables by fresh anonymous ones, the mapping is shared across calls."""
    if isinstance(term, Variable):
        fresh = renaming.get(term)
        if fresh is None:
            fresh = renaming[term] = Variable(None, term.position)
        return fresh
    if isinstance(term, ListTerm):
        items = list(term)
        result = rename(term.last_tail(), renaming)
        for item in reversed(items):
            result = ListTerm(rename(item, renaming), result)
        return result
    if isinstance(term, Structure):
        return Structure(term.functor, tuple(rename(argument, renaming) for argument in term.arguments))
    return term


def is_variant(left: Term, right: Term) -> bool:
    """Check that two terms are equal up to a consistent renaming of variables."""
    forward: dict[Variable, Variable] = {}
    backward: dict[Variable, Variable] = {}
    stack = [(left, right)]
    while stack:
        a, b = stack.pop()
        if isinstance(a, Variable) or isinstance(b, Variable):
            if not (isinstance(a, Variable) and isinstance(b, Variable)):
                return False
            if forward.setdefault(a, b) != b or backward.setdefault(b, a) != a:
                return False
        elif isinstance(a, (Structure, ListTerm)):
            if type(a) is not type(b) or a.functor != b.functor or a.arity != b.arity:
                return False
            stack.extend(zip(a.arguments, b.arguments, strict=True))
        elif a != b:
            return False
    return True
