"""Immutable term model.

Every term variant is a small slotted class. Special constants (``nil``, ``true``, ``fail``, ``!`` and ``[]``) are
atoms with a reserved functor, so they unify and compare like any other atom while reporting their own
:class:`TermType`. Compound terms compute their hash lazily because the resolution machine builds many of them
that are never hashed.
"""

import itertools
import math
import re
import threading
import weakref
from collections.abc import Iterable, Iterator
from functools import partial
from typing import Any

import numpy as np

from app.core.errors import (
    ArityError,
    CompoundExpectedError,
    FunctorError,
    IndicatorError,
    ListExpectedError,
    PrologError,
    PrologSyntaxError,
)
from app.domain.models.indicator import Indicator
from app.domain.schemas.types import TermType

SIMPLE_ATOM = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
VARIABLE_NAME = re.compile(r"[A-Z_][A-Za-z0-9_]*\Z")

INTEGER_RANGE = (-(2**31), 2**31 - 1)
LONG_RANGE = (-(2**63), 2**63 - 1)

REFERENCE_DIGITS = 17
REFERENCE_PREFIX = "J#"


class _Sequence:
    """Thread safe monotonic counter."""

    def __init__(self, start: int = 1):
        self._counter = itertools.count(start)
        self._lock = threading.Lock()

    def next(self) -> int:
        with self._lock:
            return next(self._counter)


_VARIABLE_SERIALS = _Sequence()
_REFERENCE_IDS = _Sequence()


class Term:
    """Base class of every term variant.

    Accessors raise the taxonomy errors when the variant does not own the property, e.g. ``functor`` on a variable
    raises :class:`FunctorError`.
    """

    __slots__ = ()

    @property
    def type(self) -> TermType:
        """Variant tag of the term."""
        raise NotImplementedError

    @property
    def functor(self) -> str:
        """Name of the term."""
        raise FunctorError(f"The term {self} has no functor")

    @property
    def arity(self) -> int:
        """Number of arguments, zero for atomic terms."""
        return 0

    @property
    def indicator(self) -> str:
        """Indicator text ``functor/arity``."""
        return str(self.prolog_indicator)

    @property
    def prolog_indicator(self) -> Indicator:
        """Indicator of the term."""
        try:
            return Indicator(self.functor, self.arity)
        except (FunctorError, ArityError) as e:
            raise IndicatorError(f"The term {self} has no indicator") from e

    @property
    def arguments(self) -> tuple["Term", ...]:
        """Arguments of a compound term, empty for atomic terms."""
        return ()

    def argument(self, index: int) -> "Term":
        """Argument at a zero based position.

        Raises:
            CompoundExpectedError: when the term is not compound
        """
        if not self.is_compound():
            raise CompoundExpectedError(f"The term {self} has no arguments")
        arguments = self.arguments
        if not 0 <= index < len(arguments):
            raise PrologError(f"Argument index {index} out of range for {self.indicator}")
        return arguments[index]

    def has_indicator(self, functor: str, arity: int) -> bool:
        """Check the term functor and arity."""
        try:
            return self.functor == functor and self.arity == arity
        except (FunctorError, ArityError):
            return False

    # Type checks
    def is_atom(self) -> bool:
        """Check that the term is an atom, special constants included."""
        return False

    def is_number(self) -> bool:
        """Check that the term is a number of any width."""
        return False

    def is_integer(self) -> bool:
        """Check that the term is a 32 bits integer."""
        return self.type is TermType.INTEGER

    def is_long(self) -> bool:
        """Check that the term is a 64 bits integer."""
        return self.type is TermType.LONG

    def is_float(self) -> bool:
        """Check that the term is a single precision float."""
        return self.type is TermType.FLOAT

    def is_double(self) -> bool:
        """Check that the term is a double precision float."""
        return self.type is TermType.DOUBLE

    def is_variable(self) -> bool:
        """Check that the term is a variable."""
        return False

    def is_anonymous(self) -> bool:
        """Check that the term is an anonymous variable."""
        return False

    def is_list(self) -> bool:
        """Check that the term is a list cell or the empty list."""
        return False

    def is_empty_list(self) -> bool:
        """Check that the term is the empty list ``[]``."""
        return self.type is TermType.EMPTY_LIST

    def is_structure(self) -> bool:
        """Check that the term is a structure (lists excluded)."""
        return False

    def is_compound(self) -> bool:
        """Check that the term has arguments."""
        return False

    def is_atomic(self) -> bool:
        """Check that the term is an atom or a number."""
        return self.is_atom() or self.is_number()

    def is_nil(self) -> bool:
        """Check that the term is the ``nil`` constant."""
        return self.type is TermType.NIL

    def is_true(self) -> bool:
        """Check that the term is the ``true`` constant."""
        return self.type is TermType.TRUE

    def is_fail(self) -> bool:
        """Check that the term is the ``fail`` constant."""
        return self.type is TermType.FAIL

    def is_false(self) -> bool:
        """Check that the term is a false constant, ``fail`` or ``false``."""
        return self.is_fail() or (self.is_atom() and self.functor == "false")

    def is_cut(self) -> bool:
        """Check that the term is the cut ``!``."""
        return self.type is TermType.CUT

    def is_reference(self) -> bool:
        """Check that the term is a reference to a host value."""
        return False

    def is_object_type(self) -> bool:
        """Check that the term references a host value other than null."""
        return False

    def is_null_type(self) -> bool:
        """Check that the term references the host null value."""
        return False

    def is_true_type(self) -> bool:
        """Check that the term references the host true value."""
        return False

    def is_false_type(self) -> bool:
        """Check that the term references the host false value."""
        return False

    def is_void_type(self) -> bool:
        """Check that the term references the host void type."""
        return False

    def is_evaluable(self) -> bool:
        """Check that the term is a structure whose functor is an operator."""
        return False

    def is_ground(self) -> bool:
        """Check that the term has no variables."""
        stack: list[Term] = [self]
        while stack:
            term = stack.pop()
            if term.is_variable():
                return False
            if term.is_compound() and not term.is_reference():
                stack.extend(term.arguments)
        return True

    # Relations
    def unify(self, other: "Term") -> bool:
        """Check that the term unifies with the given one, neither term is modified."""
        from app.domain.services.unification import unify

        return unify(self, other) is not None

    def compare(self, other: "Term") -> int:
        """Standard order comparison: negative, zero or positive."""
        from app.domain.services.ordering import compare_terms

        return compare_terms(self, other)

    def __lt__(self, other: "Term") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "Term") -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: "Term") -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: "Term") -> bool:
        return self.compare(other) >= 0

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return structurally_equal(self, other)

    def __hash__(self) -> int:
        raise NotImplementedError

    def __str__(self) -> str:
        from app.domain.services.printer import format_term

        return format_term(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


_SPECIAL_TYPES = {
    "nil": TermType.NIL,
    "true": TermType.TRUE,
    "fail": TermType.FAIL,
    "!": TermType.CUT,
    "[]": TermType.EMPTY_LIST,
}


class Atom(Term):
    """Constant named by its functor."""

    __slots__ = ("_functor", "_type")

    def __init__(self, functor: str):
        self._functor = functor
        self._type = _SPECIAL_TYPES.get(functor, TermType.ATOM)

    @property
    def type(self) -> TermType:
        return self._type

    @property
    def functor(self) -> str:
        return self._functor

    def is_atom(self) -> bool:
        return True

    def is_list(self) -> bool:
        return self._type is TermType.EMPTY_LIST

    def is_simple(self) -> bool:
        """Check that the atom prints without quotes."""
        return SIMPLE_ATOM.match(self._functor) is not None

    def __iter__(self) -> Iterator[Term]:
        if self._type is not TermType.EMPTY_LIST:
            raise ListExpectedError(f"The atom {self} is not a list")
        return iter(())

    def __eq__(self, other: object) -> bool:
        if type(other) is Atom:
            return self._functor == other._functor
        return super().__eq__(other)

    def __hash__(self) -> int:
        return hash(("atom", self._functor))


class Number(Term):
    """Base of the numeric variants."""

    __slots__ = ("_value",)

    integral: bool = True

    @property
    def value(self) -> int | float:
        """Numeric value."""
        return self._value

    def is_number(self) -> bool:
        return True

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._value))


class Integer(Number):
    """32 bits integer number."""

    __slots__ = ()

    def __init__(self, value: int = 0):
        value = int(value)
        if not INTEGER_RANGE[0] <= value <= INTEGER_RANGE[1]:
            raise PrologError(f"Integer overflow: {value} does not fit in 32 bits")
        self._value = value

    @property
    def type(self) -> TermType:
        return TermType.INTEGER


class Long(Number):
    """64 bits integer number."""

    __slots__ = ()

    def __init__(self, value: int = 0):
        value = int(value)
        if not LONG_RANGE[0] <= value <= LONG_RANGE[1]:
            raise PrologError(f"Long overflow: {value} does not fit in 64 bits")
        self._value = value

    @property
    def type(self) -> TermType:
        return TermType.LONG


def _finite(value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise PrologError(f"Float value {value} is not a finite number")
    return value


class Float(Number):
    """Single precision floating number."""

    __slots__ = ()

    integral = False

    def __init__(self, value: float = 0.0):
        value = _finite(value)
        with np.errstate(over="ignore"):
            single = float(np.float32(value))
        if not math.isfinite(single):
            raise PrologError(f"Float overflow: {value} does not fit in single precision")
        self._value = single

    @property
    def type(self) -> TermType:
        return TermType.FLOAT


class Double(Number):
    """Double precision floating number."""

    __slots__ = ()

    integral = False

    def __init__(self, value: float = 0.0):
        self._value = _finite(value)

    @property
    def type(self) -> TermType:
        return TermType.DOUBLE


class Variable(Term):
    """Logic variable.

    Named variables are identified by their name, so the same name inside one clause or query is the same
    variable. Anonymous variables are identified by a serial number and are never equal to each other.
    """

    __slots__ = ("_name", "_position", "_serial")

    def __init__(self, name: str | None = None, position: int = 0):
        self._name = None if name == "_" else name
        self._position = position
        self._serial = _VARIABLE_SERIALS.next()

    @property
    def type(self) -> TermType:
        return TermType.VARIABLE

    @property
    def name(self) -> str:
        """Variable name, ``_`` for anonymous variables."""
        return self._name if self._name is not None else "_"

    @property
    def position(self) -> int:
        """Declaration order of the variable inside its clause or query."""
        return self._position

    @property
    def serial(self) -> int:
        """Creation sequence number."""
        return self._serial

    @property
    def key(self) -> str | int:
        """Identity of the variable: its name, or the serial number when anonymous."""
        return self._name if self._name is not None else self._serial

    @property
    def functor(self) -> str:
        raise FunctorError(f"The variable {self.name} has no functor")

    @property
    def arity(self) -> int:
        raise ArityError(f"The variable {self.name} has no arity")

    def is_variable(self) -> bool:
        return True

    def is_anonymous(self) -> bool:
        return self._name is None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Variable):
            return self.key == other.key
        return super().__eq__(other)

    def __hash__(self) -> int:
        return hash(("var", self.key))


class Compound(Term):
    """Base of the terms with arguments."""

    __slots__ = ("_hash",)

    def is_compound(self) -> bool:
        return True

    def __hash__(self) -> int:
        cached = self._hash
        if cached is None:
            cached = self._hash = hash((self.functor, self.arguments))
        return cached


class ListTerm(Compound):
    """List cell ``[head|tail]``, functor ``.`` and arity 2."""

    __slots__ = ("_head", "_tail")

    def __init__(self, head: Term, tail: Term):
        self._head = head
        self._tail = tail
        self._hash = None

    @property
    def type(self) -> TermType:
        return TermType.LIST

    @property
    def functor(self) -> str:
        return "."

    @property
    def arity(self) -> int:
        return 2

    @property
    def head(self) -> Term:
        """First element."""
        return self._head

    @property
    def tail(self) -> Term:
        """Rest of the list."""
        return self._tail

    @property
    def arguments(self) -> tuple[Term, ...]:
        return self._head, self._tail

    def is_list(self) -> bool:
        return True

    def last_tail(self) -> Term:
        """Term closing the chain of cells, ``[]`` for proper lists."""
        term: Term = self
        while isinstance(term, ListTerm):
            term = term._tail
        return term

    def is_proper(self) -> bool:
        """Check that the chain is closed by ``[]``."""
        return self.last_tail().is_empty_list()

    def __iter__(self) -> Iterator[Term]:
        term: Term = self
        while isinstance(term, ListTerm):
            yield term._head
            term = term._tail

    def __len__(self) -> int:
        return sum(1 for _ in self)


class Structure(Compound):
    """Compound term ``functor(arg1, ..., argN)``."""

    __slots__ = ("_functor", "_args")

    def __init__(self, functor: str, args: tuple[Term, ...]):
        self._functor = functor
        self._args = args
        self._hash = None

    @property
    def type(self) -> TermType:
        return TermType.STRUCTURE

    @property
    def functor(self) -> str:
        return self._functor

    @property
    def arity(self) -> int:
        return len(self._args)

    @property
    def arguments(self) -> tuple[Term, ...]:
        return self._args

    def is_structure(self) -> bool:
        return True

    def is_evaluable(self) -> bool:
        from app.domain.models.operator import ISO_OPERATORS

        return any(operator.name == self._functor and operator.arity == len(self._args) for operator in ISO_OPERATORS)


_REFERENCES: "weakref.WeakValueDictionary[str, Reference]" = weakref.WeakValueDictionary()
_REFERENCES_BY_OBJECT: dict[int, "weakref.ref[Reference]"] = {}
_REFERENCES_LOCK = threading.RLock()


def _drop_object_entry(key: int, entry: "weakref.ref[Reference]"):
    # a newer reference to a value at the same address keeps its entry
    with _REFERENCES_LOCK:
        if _REFERENCES_BY_OBJECT.get(key) is entry:
            del _REFERENCES_BY_OBJECT[key]


class Reference(Compound):
    """Reference ``@(J#...)`` to a host value, functor ``@`` and arity 1."""

    __slots__ = ("_handle", "_object", "__weakref__")

    def __init__(self, obj: Any):
        self._object = obj
        self._handle = f"{REFERENCE_PREFIX}{_REFERENCE_IDS.next():0{REFERENCE_DIGITS}d}"
        self._hash = None
        with _REFERENCES_LOCK:
            _REFERENCES[self._handle] = self
            _REFERENCES_BY_OBJECT[id(obj)] = weakref.ref(self, partial(_drop_object_entry, id(obj)))

    @property
    def type(self) -> TermType:
        return TermType.REFERENCE

    @property
    def functor(self) -> str:
        return "@"

    @property
    def arity(self) -> int:
        return 1

    @property
    def handle(self) -> str:
        """Identification of the referenced value, ``J#`` plus 17 digits."""
        return self._handle

    @property
    def arguments(self) -> tuple[Term, ...]:
        return (Atom(self._handle),)

    @property
    def obj(self) -> Any:
        """The referenced host value."""
        return self._object

    def is_reference(self) -> bool:
        return True

    def is_object_type(self) -> bool:
        return self._object is not None

    def is_null_type(self) -> bool:
        return self._object is None

    def is_true_type(self) -> bool:
        return self._object is True

    def is_false_type(self) -> bool:
        return self._object is False

    def is_void_type(self) -> bool:
        return self._object is type(None)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Reference):
            return self._handle == other._handle
        return super().__eq__(other)

    def __hash__(self) -> int:
        return hash(("ref", self._handle))


NIL = Atom("nil")
TRUE = Atom("true")
FAIL = Atom("fail")
FALSE = Atom("false")
CUT = Atom("!")
EMPTY = Atom("[]")

_SPECIAL_TERMS = {
    "nil": NIL,
    "true": TRUE,
    "fail": FAIL,
    "false": FALSE,
    "cut": CUT,
    "!": CUT,
    "empty": EMPTY,
    "[]": EMPTY,
}


def structurally_equal(left: Term, right: Term) -> bool:
    """Structural equality without recursion, safe on long lists."""
    stack = [(left, right)]
    while stack:
        a, b = stack.pop()
        if a is b:
            continue
        if type(a) is not type(b):
            return False
        if isinstance(a, Number):
            if a._value != b._value:
                return False
        elif isinstance(a, Atom):
            if a._functor != b._functor:
                return False
        elif isinstance(a, Variable):
            if a.key != b.key:
                return False
        elif isinstance(a, Reference):
            if a._handle != b._handle:
                return False
        elif isinstance(a, ListTerm):
            stack.append((a._tail, b._tail))
            stack.append((a._head, b._head))
        else:
            if a.functor != b.functor or a.arity != b.arity:
                return False
            stack.extend(zip(a.arguments, b.arguments, strict=True))
    return True


def lookup_reference(handle: str) -> Reference:
    """Find a live reference by its handle.

    Raises:
        PrologError: when the handle is unknown or its term was released
    """
    reference = _REFERENCES.get(handle)
    if reference is None:
        raise PrologError(f"Unknown reference handle: {handle}")
    return reference


def reference_for(obj: Any) -> Reference:
    """Reference to the host value, reusing the live one when the value was already referenced."""
    with _REFERENCES_LOCK:
        existing = _REFERENCES_BY_OBJECT.get(id(obj))
    reference = existing() if existing is not None else None
    if reference is not None and reference.obj is obj:
        return reference
    return Reference(obj)


# Constructors
def new_atom(functor: str) -> Atom:
    """Create an atom, one layer of surrounding quotes is removed.

    Args:
        functor (str): atom name, quoted or not

    Returns:
        Atom: the atom, special constants are returned as their singletons
    """
    if not functor:
        raise PrologError("Atom functor can not be empty")
    if len(functor) >= 2 and functor[0] == "'" and functor[-1] == "'":
        functor = functor[1:-1]
    special = _SPECIAL_TERMS.get(functor)
    if special is not None and special.functor == functor:
        return special
    return Atom(functor)


_NUMBER_KINDS: dict[TermType, type[Number]] = {
    TermType.INTEGER: Integer,
    TermType.LONG: Long,
    TermType.FLOAT: Float,
    TermType.DOUBLE: Double,
}


def new_number(kind: TermType, value: int | float | None = None) -> Number:
    """Create a number of the requested width, zero when the value is absent.

    Raises:
        PrologError: when the kind is not numeric or the value overflows the width
    """
    number_class = _NUMBER_KINDS.get(kind)
    if number_class is None:
        raise PrologError(f"Not a numeric kind: {kind}")
    if value is None:
        return number_class()
    if number_class.integral and isinstance(value, float) and not value.is_integer():
        raise PrologError(f"Value {value} is not integral for {kind.name.lower()}")
    try:
        return number_class(value)
    except (OverflowError, ValueError) as e:
        raise PrologError(f"Value {value} is not representable as {kind.name.lower()}") from e


def integral_term(value: int) -> Integer | Long:
    """Narrowest integral term holding the value."""
    if INTEGER_RANGE[0] <= value <= INTEGER_RANGE[1]:
        return Integer(value)
    return Long(value)


def new_variable(name: str | None = None, position: int = 0) -> Variable:
    """Create a variable, anonymous when the name is absent or ``_``.

    Raises:
        PrologSyntaxError: when the name is not a variable name
        PrologError: when the position is negative
    """
    if name is not None and VARIABLE_NAME.match(name) is None:
        raise PrologSyntaxError(f"Malformed variable name: {name}")
    if position < 0:
        raise PrologError(f"Variable position can not be negative: {position}")
    return Variable(name, position)


def new_list(items: Iterable[Term] = (), tail: Term | None = None) -> Term:
    """Create a list from its items, the tail defaults to the empty list."""
    result: Term = EMPTY if tail is None else tail
    for item in reversed(list(items)):
        result = ListTerm(item, result)
    return result


def new_structure(functor: str, args: Iterable[Term] = ()) -> Term:
    """Create a structure, an empty argument list gives an atom."""
    arguments = tuple(args)
    for argument in arguments:
        if not isinstance(argument, Term):
            raise PrologError(f"Structure argument is not a term: {argument!r}")
    if not arguments:
        return new_atom(functor)
    if functor == "." and len(arguments) == 2:
        return ListTerm(*arguments)
    return Structure(functor, arguments)


def new_expression(left: Term, operator: str, right: Term, operators: Any = None) -> Structure:
    """Create the infix expression ``left operator right``.

    Args:
        left (Term): left operand
        operator (str): infix operator name
        right (Term): right operand
        operators (OperatorTable, optional): table validating the operator, ISO core when absent

    Raises:
        PrologError: when the operator is not a known infix operator
    """
    from app.domain.models.operator import ISO_OPERATORS, OperatorTable

    table = operators if operators is not None else OperatorTable(ISO_OPERATORS)
    if table.infix(operator) is None:
        raise PrologError(f"Unknown infix operator: {operator}")
    return Structure(operator, (left, right))


def new_reference(obj: Any) -> Reference:
    """Create a reference with a fresh handle to the host value."""
    return Reference(obj)


def special_term(which: str | TermType) -> Atom:
    """Get a special constant: nil, true, fail, false, cut or empty."""
    if isinstance(which, TermType):
        which = {TermType.CUT: "cut", TermType.EMPTY_LIST: "empty"}.get(which, which.name.lower())
    term = _SPECIAL_TERMS.get(which)
    if term is None:
        raise PrologError(f"Unknown special term: {which}")
    return term
