import pytest

from app.domain.models.clause import Clause
from app.domain.models.operator import OperatorTable
from app.domain.models.term import (
    CUT,
    EMPTY,
    Atom,
    Double,
    Float,
    Integer,
    ListTerm,
    Long,
    Structure,
    Variable,
    new_list,
)
from app.domain.services.printer import TermPrinter, format_clause, format_float, format_term, quote

a, b, c = Atom("a"), Atom("b"), Atom("c")
X, Y, Z = Variable("X"), Variable("Y"), Variable("Z")


def op(name: str, *arguments):
    return Structure(name, arguments)


@pytest.mark.domain
@pytest.mark.parametrize(
    "term, text",
    [
        (Atom("hello"), "hello"),
        (Atom("hello wolrd"), "'hello wolrd'"),
        (Atom("Hello"), "'Hello'"),
        (Atom("it's"), "'it\\'s'"),
        (Atom("back\\slash"), "'back\\\\slash'"),
        (Atom("two\nlines"), "'two\\nlines'"),
        (Atom("+"), "'+'"),
        (Atom("is"), "'is'"),
        (EMPTY, "[]"),
        (CUT, "!"),
    ],
)
def test_atoms(term, text):
    """Test that complex and operator atoms are quoted."""
    assert format_term(term) == text, f"{term!r} should print as {text}"


@pytest.mark.domain
@pytest.mark.parametrize(
    "term, text",
    [
        (Integer(-7), "-7"),
        (Long(2**40), "1099511627776"),
        (Double(1.0), "1.0"),
        (Double(1e-05), "1.0e-05"),
        (Double(1e16), "1.0e+16"),
        (Double(-2.5), "-2.5"),
        (Float(0.1), "0.1"),
    ],
)
def test_numbers(term, text):
    """Test that numbers print as literals of their family."""
    assert format_term(term) == text, f"{term!r} should print as {text}"


@pytest.mark.domain
@pytest.mark.parametrize(
    "term, text",
    [
        (op("is", X, op("+", Integer(5), Integer(3))), "X is 5+3"),
        (op("*", op("+", Integer(1), Integer(2)), Integer(3)), "(1+2)*3"),
        (op("+", Integer(1), op("*", Integer(2), Integer(3))), "1+2*3"),
        (op("-", a, op("-", b, c)), "a- (b-c)"),
        (op("-", op("-", a, b), c), "a-b-c"),
        (op("-", a, Integer(-1)), "a- -1"),
        (op("-", Integer(1)), "- 1"),
        (op("=", X, Double(-0.5)), "X= -0.5"),
        (op("f", op(",", a, b)), "f((a,b))"),
        (op(";", a, op("->", b, c)), "a;b->c"),
        (op("->", op(";", a, b), c), "(a;b)->c"),
        (op("\\+", op("p", X)), "\\+ p(X)"),
        (op(":-", op("p", X), op("q", X)), "p(X) :- q(X)"),
        (op("hello world", a), "'hello world'(a)"),
        (op("-", a, b, c), "'-'(a,b,c)"),
        (new_list([a, op(";", b, c)]), "[a,(b;c)]"),
        (ListTerm(a, Variable("T")), "[a|T]"),
        (new_list([Integer(1), Integer(2)], Atom("rest")), "[1,2|rest]"),
    ],
)
def test_compounds(term, text):
    """Test the operator notation and its parentheses."""
    assert format_term(term) == text, f"{term!r} should print as {text}"


@pytest.mark.domain
def test_user_operators():
    """Test that the printer follows the operator table it is given."""
    table = OperatorTable()
    table.define(700, "xfx", "===>")
    table.define(200, "xfy", "and")
    assert format_term(op("===>", a, b), table) == "a===>b", "User infix operator"
    assert format_term(op("===>", a, b)) == "'===>'(a,b)", "Unknown to the default table"
    assert format_term(op("and", a, b), table) == "a and b", "Alphabetic operators are spaced"
    assert TermPrinter(table).atom("and") == "'and'", "Operator atoms are quoted"


@pytest.mark.domain
def test_clauses():
    """Test the clause text."""
    rule = Clause.make(op("grandparent", X, Z), [op("parent", X, Y), op("parent", Y, Z)])
    assert format_clause(rule) == "grandparent(X,Z) :- parent(X,Y),parent(Y,Z).", "One line rule"
    assert format_clause(rule, listing=True) == "grandparent(X,Z) :-\n    parent(X,Y),\n    parent(Y,Z).", (
        "Listing puts each goal on its own line"
    )
    assert format_clause(Clause.make(op("parent", Atom("pam"), Atom("bob")))) == "parent(pam,bob).", "Fact"
    assert format_clause(Clause.directive(op("dynamic", op("/", Atom("f"), Integer(1))))) == ":- dynamic(f/1).", (
        "Directive"
    )
    goal = Clause.make(op("dark", Z), [op(";", op("black", Z), op("brown", Z))])
    assert format_clause(goal) == "dark(Z) :- (black(Z);brown(Z)).", "Disjunctive goals are parenthesized"


@pytest.mark.domain
def test_helpers():
    """Test the quoting and float helpers."""
    assert quote("a'b") == "'a\\'b'", "Quotes are escaped"
    assert quote("tab\there") == "'tab\\there'", "Tabs are escaped"
    assert format_float(3.0) == "3.0", "Integral floats keep a fraction"
    assert format_float(1.5e-7) == "1.5e-07", "Exponent notation keeps the mantissa"
    assert format_float(2e20) == "2.0e+20", "Large exponents get a fraction"
