"""Deterministic built-in predicates and arithmetic evaluation.

A built-in is a function ``(machine, args) -> bool`` that succeeds or fails once. Control constructs that change
the continuation, like conjunction, disjunction, cut and call, live in the machine itself.
"""

import math
import operator
from collections.abc import Callable
from typing import TYPE_CHECKING

from app.core.errors import PrologError
from app.domain.models.clause import Clause, conjunction
from app.domain.models.indicator import Indicator
from app.domain.models.term import (
    EMPTY,
    LONG_RANGE,
    TRUE,
    Atom,
    Double,
    ListTerm,
    Number,
    Structure,
    integral_term,
    structurally_equal,
)
from app.domain.services.ordering import compare_terms
from app.infrastructure.resolution.runtime import Cell, build, deref, resolve

if TYPE_CHECKING:
    from app.infrastructure.resolution.machine import Machine

Builtin = Callable[["Machine", tuple], bool]

# control constructs handled by the machine, listed for introspection
CONTROL: frozenset[tuple[str, int]] = frozenset(
    {
        ("true", 0),
        ("fail", 0),
        ("false", 0),
        ("!", 0),
        (",", 2),
        (";", 2),
        ("->", 2),
        ("\\+", 1),
        ("not", 1),
        ("findall", 3),
        *(("call", arity) for arity in range(1, 9)),
    }
)


# arithmetic
def _integers(*values: int | float) -> None:
    for value in values:
        if not isinstance(value, int):
            raise PrologError(f"Type error: integer expected, found {value}")


def _truncated_division(a: int, b: int) -> int:
    quotient = abs(a) // abs(b)
    return quotient if (a >= 0) == (b >= 0) else -quotient


def _divide(a: int | float, b: int | float) -> int | float:
    if isinstance(a, int) and isinstance(b, int):
        return _truncated_division(a, b)
    return a / b


def _integer_division(a: int | float, b: int | float) -> int:
    _integers(a, b)
    return _truncated_division(a, b)  # type: ignore[arg-type]


def _remainder(a: int | float, b: int | float) -> int:
    _integers(a, b)
    return a - b * _truncated_division(a, b)  # type: ignore[arg-type, operator]


def _modulo(a: int | float, b: int | float) -> int:
    _integers(a, b)
    return a % b  # type: ignore[operator]


def _power(a: int | float, b: int | float) -> int | float:
    if isinstance(a, int) and isinstance(b, int):
        if b < 0:
            if a in (1, -1):
                return 1 if a == 1 or b % 2 == 0 else -1
            raise PrologError(f"Type error: {a} ^ {b} has no integer value")
        if abs(a) > 1 and (abs(a).bit_length() - 1) * b > 64:
            raise PrologError(f"Integer overflow: {a} ^ {b} does not fit in 64 bits")
        return a**b
    return _real_power(a, b)


def _float_power(a: int | float, b: int | float) -> int | float:
    if isinstance(a, int) and isinstance(b, int) and b >= 0:
        return _power(a, b)
    return _real_power(a, b)


def _real_power(a: int | float, b: int | float) -> float:
    result = float(a) ** float(b)
    if isinstance(result, complex):
        raise PrologError(f"Evaluation error: {a} ** {b} is not a real number")
    return result


def _shift(direction: Callable[[int, int], int]) -> Callable[[int | float, int | float], int]:
    def shift(a: int | float, b: int | float) -> int:
        _integers(a, b)
        if direction is operator.lshift and b > 64:  # type: ignore[operator]
            raise PrologError(f"Integer overflow: {a} << {b}")
        return direction(a, b)  # type: ignore[arg-type]

    return shift


def _bitwise(function: Callable[[int, int], int]) -> Callable[[int | float, int | float], int]:
    def bitwise(a: int | float, b: int | float) -> int:
        _integers(a, b)
        return function(a, b)  # type: ignore[arg-type]

    return bitwise


def _complement(a: int | float) -> int:
    _integers(a)
    return ~a  # type: ignore[operator]


def _sign(a: int | float) -> int | float:
    if isinstance(a, int):
        return (a > 0) - (a < 0)
    return math.copysign(1.0, a) if a else 0.0


def _to_integer(a: int | float) -> int:
    if isinstance(a, int):
        return a
    return int(math.floor(a + 0.5))


FUNCTIONS: dict[tuple[str, int], Callable[..., int | float]] = {
    ("+", 2): operator.add,
    ("-", 2): operator.sub,
    ("*", 2): operator.mul,
    ("/", 2): _divide,
    ("//", 2): _integer_division,
    ("rem", 2): _remainder,
    ("mod", 2): _modulo,
    ("min", 2): min,
    ("max", 2): max,
    ("**", 2): _float_power,
    ("^", 2): _power,
    (">>", 2): _shift(operator.rshift),
    ("<<", 2): _shift(operator.lshift),
    ("/\\", 2): _bitwise(operator.and_),
    ("\\/", 2): _bitwise(operator.or_),
    ("xor", 2): _bitwise(operator.xor),
    ("-", 1): operator.neg,
    ("+", 1): operator.pos,
    ("\\", 1): _complement,
    ("abs", 1): abs,
    ("sign", 1): _sign,
    ("float", 1): float,
    ("integer", 1): _to_integer,
    ("truncate", 1): lambda a: int(a),
    ("sqrt", 1): lambda a: math.sqrt(a),
}

CONSTANTS: dict[str, float] = {"pi": math.pi, "e": math.e}


def evaluate(term: object) -> int | float:
    """Value of an arithmetic expression.

    Raises:
        PrologError: on unbound variables, non evaluable terms, zero divisors and overflows
    """
    term = deref(term)
    if isinstance(term, Number):
        return term.value
    kind = type(term)
    if kind is Cell:
        raise PrologError("Instantiation error: arithmetic on an unbound variable")
    if kind is Atom:
        constant = CONSTANTS.get(term.functor)  # type: ignore[attr-defined]
        if constant is None:
            raise PrologError(f"Type error: {term} is not evaluable")
        return constant
    if kind is Structure:
        function = FUNCTIONS.get((term.functor, term.arity))  # type: ignore[attr-defined]
        if function is None:
            raise PrologError(f"Type error: {term.indicator} is not evaluable")  # type: ignore[attr-defined]
        values = [evaluate(argument) for argument in term.arguments]  # type: ignore[attr-defined]
        try:
            return function(*values)
        except ZeroDivisionError as e:
            raise PrologError(f"Evaluation error: zero divisor in {term}") from e
        except (OverflowError, ValueError) as e:
            raise PrologError(f"Evaluation error: {e} in {term}") from e
    raise PrologError(f"Type error: {term} is not evaluable")


def number_term(value: int | float) -> Number:
    """Term of an arithmetic result, integers take the narrowest width and floats are doubles."""
    if isinstance(value, int):
        if not LONG_RANGE[0] <= value <= LONG_RANGE[1]:
            raise PrologError(f"Integer overflow: {value} does not fit in 64 bits")
        return integral_term(value)
    if not math.isfinite(value):
        raise PrologError(f"Float overflow: {value}")
    return Double(value)


def _is(machine: "Machine", args: tuple) -> bool:
    return machine.unify(args[0], number_term(evaluate(args[1])))


def _arithmetic_comparison(test: Callable[[int | float, int | float], bool]) -> Builtin:
    def compare(machine: "Machine", args: tuple) -> bool:
        return test(evaluate(args[0]), evaluate(args[1]))

    return compare


# unification and comparison
def _unify(machine: "Machine", args: tuple) -> bool:
    return machine.unify(args[0], args[1])


def _not_unifiable(machine: "Machine", args: tuple) -> bool:
    mark = len(machine.trail)
    unifiable = machine.unify(args[0], args[1])
    machine.undo(mark)
    return not unifiable


def _identical(left: object, right: object) -> bool:
    names: dict = {}
    return structurally_equal(resolve(left, names), resolve(right, names))


def _order(left: object, right: object) -> int:
    names: dict = {}
    return compare_terms(resolve(left, names), resolve(right, names))


def _standard_order(test: Callable[[int], bool]) -> Builtin:
    def compare(machine: "Machine", args: tuple) -> bool:
        return test(_order(args[0], args[1]))

    return compare


# type checks
def _type_check(test: Callable[[object], bool]) -> Builtin:
    def check(machine: "Machine", args: tuple) -> bool:
        return test(deref(args[0]))

    return check


def is_proper_list(term: object) -> bool:
    """Check that a runtime term is a list closed by ``[]``."""
    term = deref(term)
    while type(term) is ListTerm:
        term = deref(term.tail)  # type: ignore[attr-defined]
    return term is EMPTY or (type(term) is Atom and term.is_empty_list())  # type: ignore[attr-defined]


def _is_atomic(term: object) -> bool:
    return type(term) is Atom or isinstance(term, Number)


def _is_compound(term: object) -> bool:
    return type(term) is not Cell and not _is_atomic(term)


# database
def _clause_term(machine: "Machine", term: object) -> Clause:
    value = resolve(term, {})
    if isinstance(value, Structure) and value.functor == ":-" and value.arity == 1:
        raise PrologError(f"A directive can not be asserted: {value}")
    return Clause.from_term(value)


def _asserta(machine: "Machine", args: tuple) -> bool:
    machine.knowledge.add(_clause_term(machine, args[0]), front=True)
    return True


def _assertz(machine: "Machine", args: tuple) -> bool:
    machine.knowledge.add(_clause_term(machine, args[0]), front=False)
    return True


def _retract(machine: "Machine", args: tuple) -> bool:
    term = deref(args[0])
    if type(term) is Structure and term.functor == ":-" and term.arity == 2:  # type: ignore[attr-defined]
        head, body = term.arguments  # type: ignore[attr-defined]
    else:
        head, body = term, TRUE
    head = deref(head)
    if type(head) is Cell:
        raise PrologError("Instantiation error: retract of an unbound clause head")
    if not isinstance(head, (Atom, Structure)):
        raise PrologError(f"Type error: callable expected, found {head}")
    family = machine.knowledge.family(Indicator(head.functor, head.arity))
    if family is None:
        return False
    for compiled in family.candidates(None):
        mark = len(machine.trail)
        frame: list = [None] * compiled.size
        stored_head = build(compiled.head, frame)
        stored_body = conjunction(build(goal, frame) for goal in compiled.body)  # type: ignore[misc]
        if machine.unify(head, stored_head) and machine.unify(body, stored_body):
            machine.knowledge.remove(family, compiled)
            return True
        machine.undo(mark)
    return False


def _indicators(term: object) -> list[Indicator]:
    term = deref(term)
    if type(term) is Structure and term.functor in (",", "/") and term.arity == 2:  # type: ignore[attr-defined]
        left, right = (deref(argument) for argument in term.arguments)  # type: ignore[attr-defined]
        if term.functor == ",":  # type: ignore[attr-defined]
            return _indicators(left) + _indicators(right)
        if type(left) is Atom and isinstance(right, Number) and right.integral:
            return [Indicator(left.functor, int(right.value))]  # type: ignore[attr-defined]
    if type(term) is ListTerm:
        return [indicator for item in term for indicator in _indicators(item)]  # type: ignore[attr-defined]
    raise PrologError(f"Type error: predicate indicator expected, found {term}")


def _dynamic(machine: "Machine", args: tuple) -> bool:
    for indicator in _indicators(args[0]):
        machine.knowledge.declare(indicator)
    return True


def _op(machine: "Machine", args: tuple) -> bool:
    priority, specifier, names = (deref(argument) for argument in args)
    if not isinstance(priority, Number) or not priority.integral or type(specifier) is not Atom:
        raise PrologError(f"Type error: op(Priority, Specifier, Name) expected, found op({priority},{specifier},{names})")
    items = list(names) if type(names) is ListTerm else [names]  # type: ignore[call-overload]
    for name in items:
        name = deref(name)
        if type(name) is not Atom:
            raise PrologError(f"Type error: operator name expected, found {name}")
        machine.operators.define(int(priority.value), specifier.functor, name.functor)  # type: ignore[attr-defined]
    return True


BUILTINS: dict[tuple[str, int], Builtin] = {
    ("=", 2): _unify,
    ("\\=", 2): _not_unifiable,
    ("==", 2): lambda machine, args: _identical(args[0], args[1]),
    ("\\==", 2): lambda machine, args: not _identical(args[0], args[1]),
    ("@<", 2): _standard_order(lambda order: order < 0),
    ("@>", 2): _standard_order(lambda order: order > 0),
    ("@=<", 2): _standard_order(lambda order: order <= 0),
    ("@>=", 2): _standard_order(lambda order: order >= 0),
    ("is", 2): _is,
    ("=:=", 2): _arithmetic_comparison(operator.eq),
    ("=\\=", 2): _arithmetic_comparison(operator.ne),
    ("<", 2): _arithmetic_comparison(operator.lt),
    (">", 2): _arithmetic_comparison(operator.gt),
    ("=<", 2): _arithmetic_comparison(operator.le),
    (">=", 2): _arithmetic_comparison(operator.ge),
    ("var", 1): _type_check(lambda term: type(term) is Cell),
    ("nonvar", 1): _type_check(lambda term: type(term) is not Cell),
    ("atom", 1): _type_check(lambda term: type(term) is Atom),
    ("number", 1): _type_check(lambda term: isinstance(term, Number)),
    ("integer", 1): _type_check(lambda term: isinstance(term, Number) and term.integral),
    ("float", 1): _type_check(lambda term: isinstance(term, Number) and not term.integral),
    ("atomic", 1): _type_check(_is_atomic),
    ("compound", 1): _type_check(_is_compound),
    ("callable", 1): _type_check(lambda term: type(term) in (Atom, Structure, ListTerm)),
    ("is_list", 1): _type_check(is_proper_list),
    ("asserta", 1): _asserta,
    ("assertz", 1): _assertz,
    ("assert", 1): _assertz,
    ("retract", 1): _retract,
    ("dynamic", 1): _dynamic,
    ("op", 3): _op,
}


def builtin_indicators() -> set[Indicator]:
    """Indicators of every built-in and control construct."""
    return {Indicator(name, arity) for name, arity in (*CONTROL, *BUILTINS)}

