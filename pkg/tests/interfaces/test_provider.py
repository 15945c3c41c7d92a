import io

import pytest

from app.core.errors import ListExpectedError, PrologError, PrologSyntaxError, StructureExpectedError
from app.core.logging import PrologLogger
from app.domain.models.term import (
    CUT,
    EMPTY,
    FAIL,
    FALSE,
    NIL,
    TRUE,
    Atom,
    Double,
    Float,
    Integer,
    ListTerm,
    Long,
    Reference,
    Structure,
    Variable,
    new_list,
)
from app.domain.schemas.types import HostKind, TermType
from app.domain.services.converter import HostStructure
from app.infrastructure.resolution.engine import PrologEngine
from app.interfaces.sdk import PrologProvider


@pytest.fixture
def provider() -> PrologProvider:
    """Fixture to provide an SDK provider."""
    return PrologProvider()


@pytest.mark.backend
def test_information(provider):
    """Test the engine information and the shared services."""
    assert provider.name == "Prologue" and provider.version == "0.1.0", "Engine identity"
    assert provider.is_compliant is False, "Not an ISO implementation"
    assert repr(provider) == "PrologProvider(name='Prologue', version='0.1.0')", "Representation"
    assert isinstance(provider.get_logger(), PrologLogger), "Logger"
    assert provider.get_parser().operators is provider.operators, "The parser reads with the provider operators"
    assert provider.get_converter() is provider.converter, "Converter"


@pytest.mark.backend
def test_new_engine(provider, data_path):
    """Test the engines created by the provider."""
    engine = provider.new_engine(data_path / "zoo.pl")
    assert isinstance(engine, PrologEngine), "An engine"
    assert engine.query_one("small(X)") == {"X": Atom("cat")}, "The program is consulted"
    assert provider.new_engine().get_program_size() == 0, "An empty engine"
    assert provider.new_engine(io.StringIO("a.")).contains("a"), "A reader"


@pytest.mark.backend
def test_constructors(provider):
    """Test the term constructors with terms and host values."""
    assert provider.new_atom("'cat'") == Atom("cat"), "Quotes are removed"
    assert provider.new_integer(5) == Integer(5) and provider.new_integer() == Integer(0), "Integers"
    assert provider.new_long(2**40) == Long(2**40), "Longs"
    assert provider.new_float(0.5) == Float(0.5) and provider.new_double(0.5) == Double(0.5), "Floats"
    assert provider.new_variable("X", 1) == Variable("X"), "Named variable"
    assert provider.new_variable().is_anonymous(), "Anonymous variable"
    assert provider.new_structure("parent", "pam", "bob") == Structure("parent", (Atom("pam"), Atom("bob"))), (
        "Host arguments are converted"
    )
    assert provider.new_structure("cat") == Atom("cat"), "No argument gives the atom"
    assert provider.new_list([1, Atom("a")]) == new_list([Integer(1), Atom("a")]), "Mixed items"
    assert provider.new_list(["a"], Variable("T")) == ListTerm(Atom("a"), Variable("T")), "Partial list"
    assert provider.new_expression("X", "is", 1) == Structure("is", (Atom("X"), Integer(1))), "Text is an atom"
    assert provider.new_expression(Variable("X"), "+", 1) == Structure("+", (Variable("X"), Integer(1))), "Sum"
    with pytest.raises(PrologError):
        provider.new_expression(1, "plus", 2)
    reference = provider.new_reference([1, 2])
    assert isinstance(reference, Reference) and reference.obj == [1, 2], "Reference to the host value"
    with pytest.raises(PrologError):
        provider.new_integer(2**40)


@pytest.mark.backend
def test_constants(provider):
    """Test the constant terms."""
    assert provider.prolog_nil() is NIL and provider.prolog_true() is TRUE, "nil and true"
    assert provider.prolog_false() is FALSE and provider.prolog_fail() is FAIL, "false and fail"
    assert provider.prolog_cut() is CUT and provider.prolog_empty() is EMPTY, "cut and the empty list"
    assert provider.prolog_include("family.pl") == ":- include('family.pl').", "Include directive text"


@pytest.mark.backend
def test_parsing(provider):
    """Test the parsing entry points."""
    assert provider.parse_term("X + 1") == Structure("+", (Variable("X"), Integer(1))), "Term"
    assert provider.parse_terms("a, b(1)") == [Atom("a"), Structure("b", (Integer(1),))], "Terms"
    assert provider.parse_clause("a :- b.").body == Atom("b"), "Clause"
    assert provider.parse_list("[1]") == new_list([Integer(1)]), "List"
    assert provider.parse_structure("f(a)") == Structure("f", (Atom("a"),)), "Structure"
    program = provider.parse_program("a.\nb :- a.\n:- initialization(b).\n")
    assert len(program.clauses) == 2 and len(program.directives) == 1, "Clauses and directives"
    with pytest.raises(ListExpectedError):
        provider.parse_list("f(a)")
    with pytest.raises(StructureExpectedError):
        provider.parse_structure("a")
    with pytest.raises(PrologSyntaxError):
        provider.parse_term("f(")


@pytest.mark.backend
def test_conversion(provider):
    """Test the conversion entry points."""
    assert provider.to_term("cat") == Atom("cat") and provider.from_term(Atom("cat")) == "cat", "Atoms"
    assert provider.to_term(5, TermType.DOUBLE) == Double(5.0), "Cast on the way in"
    assert provider.from_term(Integer(5), HostKind.OBJECT) == 5, "Plain conversion"
    assert provider.from_term(Structure("p", (Integer(1),))) == HostStructure("p", (1,)), "Structures"
    assert provider.to_term_array([1, "a"]) == [Integer(1), Atom("a")], "Arrays"
    assert provider.from_term_array([Integer(1), Atom("a")]) == [1, "a"], "Arrays back"
    assert provider.to_term_matrix([[1]]) == [[Integer(1)]], "Matrices"
    assert provider.to_object_lists([[Atom("a")]]) == [["a"]], "Matrices back"
    assert provider.to_term_map({"X": 1}) == {"X": Integer(1)}, "Maps"
    assert provider.to_object_map({"X": Integer(1)}) == {"X": 1}, "Maps back"
    assert provider.to_term_map_array([{"X": "a"}]) == [{"X": Atom("a")}], "Map arrays"
    assert provider.to_object_maps([{"X": Atom("a")}]) == [{"X": "a"}], "Map arrays back"
