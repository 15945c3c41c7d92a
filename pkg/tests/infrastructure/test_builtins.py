import io
import math

import pytest

from app.core.errors import PrologError
from app.domain.models.indicator import Indicator
from app.domain.models.term import EMPTY, Atom, Double, Integer, Long, Structure, Variable, new_list
from app.infrastructure.resolution.builtins import evaluate, number_term
from app.infrastructure.resolution.engine import PrologEngine

PROGRAM = """
n(1). n(2). n(3).
plus(A, B, C) :- C is A + B.
t(X) :- (X = 1 ; X = 2), !.
count(0).
count(N) :- N > 0, M is N - 1, count(M).
upto(N, N, [N]) :- !.
upto(I, N, [I|T]) :- I < N, J is I + 1, upto(J, N, T).
len([], 0).
len([_|T], N) :- len(T, M), N is M + 1.
"""

INDEXED = "k(1, a). k(1.0, b). k(a, c). k(f(x), d). k(X, e). k([1], g). k(2, h)."


@pytest.fixture
def program() -> PrologEngine:
    """Fixture to provide an engine with the control test program."""
    return PrologEngine(io.StringIO(PROGRAM))


@pytest.mark.infrastructure
@pytest.mark.parametrize(
    "expression, value",
    [
        ("7 / 2", Integer(3)),
        ("-7 / 2", Integer(-3)),
        ("7.0 / 2", Double(3.5)),
        ("-7 // 2", Integer(-3)),
        ("-7 rem 2", Integer(-1)),
        ("-7 mod 2", Integer(1)),
        ("2 ** 3", Integer(8)),
        ("2 ** (-1)", Double(0.5)),
        ("2.0 ** 2", Double(4.0)),
        ("2 ^ 10", Integer(1024)),
        ("1 ^ (-3)", Integer(1)),
        ("(-1) ^ (-3)", Integer(-1)),
        ("2 ^ 40", Long(2**40)),
        ("2147483647 + 1", Long(2147483648)),
        ("max(3, 4.0)", Double(4.0)),
        ("min(3, 4.0)", Integer(3)),
        ("abs(-3)", Integer(3)),
        ("sign(-2.5)", Double(-1.0)),
        ("sign(0)", Integer(0)),
        ("float(3)", Double(3.0)),
        ("integer(2.5)", Integer(3)),
        ("truncate(-2.5)", Integer(-2)),
        ("sqrt(16)", Double(4.0)),
        ("1 << 4", Integer(16)),
        ("16 >> 2", Integer(4)),
        ("5 /\\ 3", Integer(1)),
        ("5 \\/ 3", Integer(7)),
        ("5 xor 3", Integer(6)),
        ("\\ 5", Integer(-6)),
        ("- (3 + 4)", Integer(-7)),
        ("pi", Double(math.pi)),
        ("e", Double(math.e)),
    ],
)
def test_arithmetic(engine, expression, value):
    """Test the evaluation of arithmetic functions."""
    assert engine.query_one(f"X is {expression}") == {"X": value}, f"{expression} should be {value}"


@pytest.mark.infrastructure
@pytest.mark.parametrize(
    "goal",
    ["X is 1 / 0", "X is 1 mod 0", "X is Y + 1", "X is foo", "X is 1 + a", "X is 2 ^ (-1)", "X is 2 ^ 64",
     "X is 1.0 << 2", "X is 9223372036854775807 + 1", "X is sqrt(-1)", "1 < Y"],
)
def test_arithmetic_errors(engine, goal):
    """Test that evaluation errors are raised to the caller."""
    with pytest.raises(PrologError):
        engine.contains(goal)


@pytest.mark.infrastructure
def test_number_helpers():
    """Test the evaluation helpers on plain terms."""
    assert evaluate(Structure("+", (Integer(1), Double(0.5)))) == 1.5, "Mixed addition"
    assert number_term(2**31) == Long(2**31) and number_term(5) == Integer(5), "Narrowest integer width"
    assert number_term(0.5) == Double(0.5), "Floats are doubles"
    with pytest.raises(PrologError):
        number_term(2**64)
    with pytest.raises(PrologError):
        number_term(math.inf)


@pytest.mark.infrastructure
@pytest.mark.parametrize(
    "goal, expected",
    [
        ("1 =:= 1.0", True),
        ("1 =\\= 2", True),
        ("1 < 2.5", True),
        ("3 >= 3", True),
        ("2 =< 1", False),
        ("2 > 1 + 1", False),
        ("a = a", True),
        ("f(X, b) = f(a, Y)", True),
        ("a \\= b", True),
        ("f(X) \\= f(a)", False),
        ("X == X", True),
        ("X == Y", False),
        ("1 == 1.0", False),
        ("f(a) \\== f(b)", True),
        ("a @< 1", True),
        ("1 @< a", False),
        ("f(a) @> a", True),
        ("X @< a", True),
        ("1 @=< 1", True),
        ("b @>= a", True),
        ("var(X)", True),
        ("X = 1, var(X)", False),
        ("nonvar(a)", True),
        ("atom(a)", True),
        ("atom([])", True),
        ("atom(1)", False),
        ("number(1.5)", True),
        ("integer(1)", True),
        ("integer(1.0)", False),
        ("float(1.0)", True),
        ("atomic(a)", True),
        ("atomic(f(a))", False),
        ("compound(f(a))", True),
        ("compound([a])", True),
        ("compound(a)", False),
        ("callable(a)", True),
        ("callable(f(x))", True),
        ("callable(1)", False),
        ("is_list([a, b])", True),
        ("is_list([])", True),
        ("is_list([a|_])", False),
    ],
)
def test_checks(engine, goal, expected):
    """Test the comparison and type check built-ins."""
    assert engine.contains(goal) is expected, f"{goal} should be {expected}"


@pytest.mark.infrastructure
def test_unification_keeps_no_failed_bindings(engine):
    """Test that a failed \\= leaves the variables unbound."""
    assert engine.query_one("\\+ f(X) \\= f(a), var(X)") == {"X": Variable("X")}, "X stays unbound"
    assert engine.query_one("\\+ \\+ X = 1") == {"X": Variable("X")}, "Double negation does not bind"


@pytest.mark.infrastructure
def test_control(program):
    """Test disjunction, if-then-else, negation and cut."""
    assert len(program.query_all("n(X) ; X = 4")) == 4, "Both branches of a disjunction"
    assert program.query_one("(1 < 2 -> X = yes ; X = no)") == {"X": Atom("yes")}, "Then branch"
    assert program.query_one("(2 < 1 -> X = yes ; X = no)") == {"X": Atom("no")}, "Else branch"
    assert program.query_all("(n(X) -> true ; true)") == [{"X": Integer(1)}], "The condition is committed"
    assert not program.contains("(fail -> true)"), "If-then fails without else"
    assert program.contains("\\+ n(4)") and not program.contains("\\+ n(1)"), "Negation as failure"
    assert program.contains("not(n(4))"), "not/1"
    assert program.query_all("t(X)") == [{"X": Integer(1)}], "The cut prunes the disjunction of the clause"
    assert program.contains("true") and not program.contains("false"), "Constants"


@pytest.mark.infrastructure
def test_call(program):
    """Test call/N with extra arguments and the local cut."""
    assert len(program.query_all("call(n, X)")) == 3, "call/2 appends an argument"
    assert program.query_one("call(plus(1), 2, X)") == {"X": Integer(3)}, "call/3 completes a closure"
    assert program.query_one("call(plus, 1, 2, X)") == {"X": Integer(3)}, "call/4"
    assert program.query_all("call((n(X), !))") == [{"X": Integer(1)}], "Cut inside call is local to the call"
    assert len(program.query_all("n(X), call(!)")) == 3, "A called cut does not prune the caller"
    with pytest.raises(PrologError):
        program.contains("call(G)")
    with pytest.raises(PrologError):
        program.contains("call(1)")
    with pytest.raises(PrologError):
        program.contains("G")


@pytest.mark.infrastructure
def test_findall(program):
    """Test the solution collection."""
    solution = program.query_one("findall(X, n(X), L)")
    assert solution["L"] == new_list([Integer(1), Integer(2), Integer(3)]), "Every solution in order"
    assert solution["X"] == Variable("X"), "The template stays unbound"
    pairs = program.query_one("findall(X-Y, (n(X), Y is X * 2), L)")["L"]
    expected = [Structure("-", (Integer(value), Integer(2 * value))) for value in (1, 2, 3)]
    assert pairs == new_list(expected), "Templates are copied per solution"
    assert program.query_one("findall(X, fail, L)")["L"] == EMPTY, "No solution gives []"
    assert program.contains("findall(X, n(X), [1, 2, 3])"), "The result unifies with the third argument"


@pytest.mark.infrastructure
def test_database(program):
    """Test the database built-ins at run time."""
    assert program.contains("assertz(n(4)), n(4)"), "An asserted clause is visible to the next goal"
    assert program.contains("asserta(n(0))"), "asserta"
    assert program.query_one("n(X)") == {"X": Integer(0)}, "asserta adds at the front"
    assert program.contains("assert(m(1))") and program.contains("m(1)"), "assert is assertz"
    assert program.query_one("retract(n(X))") == {"X": Integer(0)}, "retract binds the first match"
    assert len(program.query_all("n(X)")) == 4, "One clause removed"
    assert program.contains("assertz((r(X) :- n(X)))"), "Rules are asserted"
    assert len(program.query_all("r(X)")) == 4, "The rule runs"
    assert program.contains("retract((r(Y) :- n(Y)))"), "Rules are retracted with their body"
    assert not program.current_predicate("r", 1), "The emptied family is dropped"
    assert not program.contains("retract(nothing(1))"), "Nothing to retract"
    with pytest.raises(PrologError):
        program.contains("assertz((:- foo))")
    with pytest.raises(PrologError):
        program.contains("retract(X)")


@pytest.mark.infrastructure
def test_declarations(engine):
    """Test dynamic/1 and op/3 at run time."""
    assert engine.contains("dynamic(foo/1)"), "Single indicator"
    assert engine.contains("dynamic([a/1, b/2])") and engine.contains("dynamic((c/1, d/2))"), "Indicator groups"
    assert {Indicator("foo", 1), Indicator("b", 2), Indicator("d", 2)} <= engine.get_predicates(), "Declared"
    assert not engine.contains("foo(_)"), "A declared family fails silently"
    with pytest.raises(PrologError):
        engine.contains("dynamic(bad)")
    assert engine.contains("op(700, xfx, ===>)"), "op/3 succeeds"
    assert engine.current_operator(700, "xfx", "===>"), "The engine table changes"
    engine.assertz("rule(a ===> b)")
    assert engine.contains("rule(_ ===> b)"), "The operator parses afterwards"
    with pytest.raises(PrologError):
        engine.contains("op(1300, xfx, bad)")


@pytest.mark.infrastructure
@pytest.mark.parametrize("goal", ["k(1, V)", "k(1.0, V)", "k(a, V)", "k(f(Y), V)", "k(Z, V)", "k([H], V)", "k(3, V)"])
def test_indexing_parity(goal):
    """Test that first argument indexing never changes the solutions."""
    indexed = PrologEngine(io.StringIO(INDEXED), indexing=True)
    plain = PrologEngine(io.StringIO(INDEXED), indexing=False)
    assert indexed.query_all(goal) == plain.query_all(goal), f"Same solutions for {goal}"


@pytest.mark.infrastructure
def test_indexing_families():
    """Test that integral and floating keys are told apart."""
    indexed = PrologEngine(io.StringIO(INDEXED))
    values = [solution["V"].functor for solution in indexed.query_all("k(1, V)")]
    assert values == ["a", "e"], "1 matches its clause and the variable clause only"
    values = [solution["V"].functor for solution in indexed.query_all("k([H], V)")]
    assert values == ["e", "g"], "Clause order is kept"


@pytest.mark.infrastructure
def test_occurs_check_engine():
    """Test the occurs check in goals and clause heads."""
    checked = PrologEngine(occurs_check=True)
    checked.assertz("same(X, X)")
    assert not checked.contains("X = f(X)"), "Cyclic binding in a goal"
    assert not checked.contains("same(Y, f(Y))"), "Cyclic binding in a head"
    assert checked.contains("same(Y, f(Z))"), "Acyclic terms still unify"


@pytest.mark.infrastructure
def test_deep_recursion(program):
    """Test that deep recursion does not use the host stack."""
    assert program.contains("count(10000)"), "Tail recursion"
    assert program.query_one("upto(1, 10000, L), len(L, N)")["N"] == Integer(10000), "Body recursion"
