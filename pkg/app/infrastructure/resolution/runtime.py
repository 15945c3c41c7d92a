"""Runtime representation of terms during resolution.

Stored clauses are compiled once into templates where every variable is a :class:`Slot` and every compound that
contains a variable is a :class:`TStruct` or :class:`TList`. Ground subterms stay plain domain terms and are shared
by every activation. Calling a clause allocates a frame of slots that head unification fills lazily, so a head
argument matched against an existing term never copies that term.

At runtime variables are :class:`Cell` objects bound destructively. Every binding is pushed on a trail so
backtracking can reset it.
"""

import itertools
from collections.abc import Callable

from app.domain.models.clause import Clause
from app.domain.models.term import Atom, ListTerm, Number, Reference, Structure, Term, Variable

_CELL_SERIALS = itertools.count(1)

IndexKey = tuple | None


class Cell:
    """Mutable logic variable, unbound while ``ref`` is None."""

    __slots__ = ("ref", "name", "serial")

    def __init__(self, name: str | None = None):
        self.ref: object | None = None
        self.name = name
        self.serial = next(_CELL_SERIALS)

    def __str__(self) -> str:
        value = deref(self)
        if type(value) is Cell:
            return f"_G{value.serial}"
        return str(value)

    def __repr__(self) -> str:
        return f"Cell({self})"


class Slot:
    """Position of a clause variable inside the activation frame."""

    __slots__ = ("index", "name")

    def __init__(self, index: int, name: str | None):
        self.index = index
        self.name = name


class TStruct:
    """Structure template with at least one variable inside."""

    __slots__ = ("functor", "args")

    def __init__(self, functor: str, args: tuple):
        self.functor = functor
        self.args = args


class TList:
    """List cell template with at least one variable inside."""

    __slots__ = ("head", "tail")

    def __init__(self, head: object, tail: object):
        self.head = head
        self.tail = tail


_TEMPLATES = (Slot, TStruct, TList)


def deref(term: object) -> object:
    """Follow the binding chain of a cell."""
    while type(term) is Cell:
        ref = term.ref
        if ref is None:
            return term
        term = ref
    return term


# compilation
def compile_term(term: Term, slots: dict) -> object:
    """Compile a domain term into a template, variables are numbered in ``slots`` by their key."""
    if isinstance(term, Variable):
        slot = slots.get(term.key)
        if slot is None:
            slot = slots[term.key] = Slot(len(slots), None if term.is_anonymous() else term.name)
        return slot
    if isinstance(term, ListTerm):
        nodes = []
        node: Term = term
        while isinstance(node, ListTerm):
            nodes.append(node)
            node = node.tail
        result = compile_term(node, slots)
        for cell in reversed(nodes):
            head = compile_term(cell.head, slots)
            if type(head) in _TEMPLATES or type(result) in _TEMPLATES:
                result = TList(head, result)
            else:
                result = cell
        return result
    if isinstance(term, Structure):
        args = tuple(compile_term(argument, slots) for argument in term.arguments)
        if any(type(argument) in _TEMPLATES for argument in args):
            return TStruct(term.functor, args)
        return term
    return term


def build(template: object, frame: list) -> object:
    """Instantiate a template in a frame, creating cells for the slots seen the first time."""
    kind = type(template)
    if kind is Slot:
        value = frame[template.index]
        if value is None:
            value = frame[template.index] = Cell(template.name)
        return value
    if kind is TStruct:
        return Structure(template.functor, tuple([build(argument, frame) for argument in template.args]))
    if kind is TList:
        heads = []
        node = template
        while type(node) is TList:
            heads.append(node.head)
            node = node.tail
        result = build(node, frame)
        for head in reversed(heads):
            result = ListTerm(build(head, frame), result)
        return result
    return template


# unification
def occurs_in(cell: Cell, term: object) -> bool:
    """Check if the unbound cell appears inside the runtime term."""
    stack = [term]
    while stack:
        current = deref(stack.pop())
        if current is cell:
            return True
        if type(current) is Structure or type(current) is ListTerm:
            stack.extend(current.arguments)
    return False


def unify(left: object, right: object, trail: list, occurs_check: bool = False) -> bool:
    """Unify two runtime terms binding cells destructively, every binding is trailed.

    Numbers unify when they belong to the same family (integral or floating) and have the same value.
    """
    stack = [(left, right)]
    while stack:
        a, b = stack.pop()
        a = deref(a)
        b = deref(b)
        if a is b:
            continue
        if type(a) is Cell:
            if occurs_check and type(b) is not Cell and occurs_in(a, b):
                return False
            a.ref = b
            trail.append(a)
            continue
        if type(b) is Cell:
            if occurs_check and occurs_in(b, a):
                return False
            b.ref = a
            trail.append(b)
            continue
        kind = type(a)
        if kind is Structure:
            if type(b) is not Structure or a.functor != b.functor or a.arity != b.arity:
                return False
            stack.extend(zip(a.arguments, b.arguments))
        elif kind is ListTerm:
            if type(b) is not ListTerm:
                return False
            stack.append((a.tail, b.tail))
            stack.append((a.head, b.head))
        elif kind is Atom:
            if type(b) is not Atom or a.functor != b.functor:
                return False
        elif isinstance(a, Number):
            if not isinstance(b, Number) or a.integral != b.integral or a.value != b.value:
                return False
        elif kind is Reference:
            if type(b) is not Reference or a.handle != b.handle:
                return False
        else:
            return False
    return True


def unify_head(template: object, term: object, frame: list, trail: list, occurs_check: bool = False) -> bool:
    """Unify a clause head template with a runtime goal, filling the frame."""
    stack = [(template, term)]
    while stack:
        pattern, value = stack.pop()
        kind = type(pattern)
        if kind is Slot:
            bound = frame[pattern.index]
            if bound is None:
                frame[pattern.index] = value
            elif not unify(bound, value, trail, occurs_check):
                return False
            continue
        value = deref(value)
        if kind is TStruct:
            if type(value) is Cell:
                built = build(pattern, frame)
                if occurs_check and occurs_in(value, built):
                    return False
                value.ref = built
                trail.append(value)
            elif type(value) is not Structure or value.functor != pattern.functor or value.arity != len(pattern.args):
                return False
            else:
                stack.extend(zip(pattern.args, value.arguments))
        elif kind is TList:
            if type(value) is Cell:
                built = build(pattern, frame)
                if occurs_check and occurs_in(value, built):
                    return False
                value.ref = built
                trail.append(value)
            elif type(value) is not ListTerm:
                return False
            else:
                stack.append((pattern.tail, value.tail))
                stack.append((pattern.head, value.head))
        elif not unify(pattern, value, trail, occurs_check):
            return False
    return True


# reading back
def fresh_variable(cell: Cell) -> Variable:
    """Variable standing for an unbound cell, named after its serial."""
    return Variable(f"_G{cell.serial}", cell.serial)


def resolve(term: object, names: dict, naming: Callable[[Cell], Variable] = fresh_variable) -> Term:
    """Copy a runtime term into an immutable domain term.

    Args:
        term (object): runtime term
        names (dict): cell to variable mapping, shared across calls and extended with new cells
        naming (Callable, optional): variable factory for unnamed cells. Defaults to fresh_variable.

    Returns:
        Term: the term with every bound cell replaced by its value
    """
    term = deref(term)
    kind = type(term)
    if kind is Cell:
        variable = names.get(term)
        if variable is None:
            variable = names[term] = naming(term)
        return variable
    if kind is Structure:
        original = term.arguments
        args = tuple(resolve(argument, names, naming) for argument in original)
        if all(new is old for new, old in zip(args, original)):
            return term
        return Structure(term.functor, args)
    if kind is ListTerm:
        nodes = []
        node = term
        while type(node) is ListTerm:
            nodes.append(node)
            node = deref(node.tail)
        result = resolve(node, names, naming)
        for cell in reversed(nodes):
            result = ListTerm(resolve(cell.head, names, naming), result)
        return result
    return term  # type: ignore[return-value]


def instantiate(term: Term, cells: dict | None = None) -> object:
    """Runtime copy of a domain term, variables with the same key share one cell."""
    slots: dict = {}
    template = compile_term(term, slots)
    frame: list = [None] * len(slots)
    built = build(template, frame)
    if cells is not None:
        for key, slot in slots.items():
            cells[key] = frame[slot.index]
    return built


# indexing
def index_key(term: object) -> IndexKey:
    """First argument index key, None for variables."""
    kind = type(term)
    if kind is Atom:
        return ("a", term.functor)
    if kind is Structure:
        return ("s", term.functor, term.arity)
    if kind is ListTerm:
        return ("l",)
    if kind is Reference:
        return ("r", term.handle)
    if isinstance(term, Number):
        return ("i" if term.integral else "f", term.value)
    return None


def variant_key(term: Term) -> tuple:
    """Preorder encoding of a term where variables are numbered by first occurrence.

    Two terms have the same key exactly when they are variants of each other.
    """
    encoded: list[tuple] = []
    numbering: dict = {}
    stack = [term]
    while stack:
        current = stack.pop()
        if isinstance(current, Variable):
            encoded.append(("v", numbering.setdefault(current.key, len(numbering))))
        elif isinstance(current, Atom):
            encoded.append(("a", current.functor))
        elif isinstance(current, Number):
            encoded.append((type(current).__name__, current.value))
        elif isinstance(current, Reference):
            encoded.append(("r", current.handle))
        elif isinstance(current, ListTerm):
            encoded.append(("l",))
            stack.append(current.tail)
            stack.append(current.head)
        else:
            encoded.append(("s", current.functor, current.arity))
            stack.extend(reversed(current.arguments))
    return tuple(encoded)


class CompiledClause:
    """Stored clause with its head and body templates."""

    __slots__ = ("clause", "head", "body", "size", "key", "variant")

    def __init__(self, clause: Clause):
        slots: dict = {}
        self.clause = clause
        self.head = compile_term(clause.head, slots)
        self.body = tuple(compile_term(goal, slots) for goal in clause.body_array)
        self.size = len(slots)
        first = clause.arguments[0] if clause.arity else None
        self.key = index_key(first) if first is not None else None
        self.variant = variant_key(clause.get_term())

    def __repr__(self) -> str:
        return f"CompiledClause({self.clause})"
