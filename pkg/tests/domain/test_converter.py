import numpy as np
import pytest

from app.core.errors import PrologError, UnknownTermError
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
from app.domain.services.converter import HostConverter, HostStructure, char, contain_quotes, remove_quotes


@pytest.fixture
def converter() -> HostConverter:
    """Fixture to provide a converter."""
    return HostConverter()


class Payload:
    """Host object without a term equivalent."""


@pytest.mark.domain
@pytest.mark.parametrize(
    "value, term",
    [
        (None, NIL),
        (True, TRUE),
        (False, FAIL),
        ("cat", Atom("cat")),
        (np.int8(5), Integer(5)),
        (np.int16(-300), Integer(-300)),
        (np.uint16(65), Integer(65)),
        (np.int32(7), Integer(7)),
        (np.int64(7), Long(7)),
        (7, Integer(7)),
        (2**40, Long(2**40)),
        (np.float32(0.5), Float(0.5)),
        (0.5, Double(0.5)),
        ([1, "a"], new_list([Integer(1), Atom("a")])),
        ((), EMPTY),
        (HostStructure("point", (1, 2.5)), Structure("point", (Integer(1), Double(2.5)))),
    ],
)
def test_to_term(converter, value, term):
    """Test the host to term table."""
    assert converter.to_term(value) == term, f"{value!r} should convert to {term!r}"


@pytest.mark.domain
@pytest.mark.parametrize(
    "term, value",
    [
        (NIL, None),
        (TRUE, True),
        (FAIL, False),
        (FALSE, False),
        (EMPTY, []),
        (Atom("cat"), "cat"),
        (Atom("'quoted'"), "quoted"),
        (Integer(5), 5),
        (Long(2**40), 2**40),
        (Double(2.5), 2.5),
        (new_list([Integer(1), Atom("a")]), [1, "a"]),
        (ListTerm(Atom("a"), Atom("b")), HostStructure(".", ("a", "b"))),
        (Structure("point", (Integer(1), Integer(2))), HostStructure("point", (1, 2))),
    ],
)
def test_from_term(converter, term, value):
    """Test the term to host table."""
    assert converter.from_term(term) == value, f"{term!r} should convert to {value!r}"


@pytest.mark.domain
@pytest.mark.parametrize("text", ["nil", "true", "fail", "false", "[]", "!", "'quoted'"])
def test_reserved_texts(converter, text):
    """Test that texts named like the constants come back as the same text."""
    term = converter.to_term(text)
    assert term.is_atom(), f"{text!r} is an atom"
    assert not (term.is_nil() or term.is_false() or term.is_true() or term.is_cut() or term.is_empty_list()), (
        f"{text!r} is not a constant"
    )
    assert converter.from_term(term) == text, f"{text!r} should read back unchanged"


@pytest.mark.domain
def test_non_finite_floats(converter):
    """Test that infinities and nan have no term."""
    for value in (float("inf"), float("-inf"), float("nan"), np.float32("inf")):
        with pytest.raises(PrologError):
            converter.to_term(value)


@pytest.mark.domain
def test_terms_without_host_value(converter):
    """Test that free variables, cuts and partial lists have no host value."""
    with pytest.raises(UnknownTermError):
        converter.from_term(Variable("X"))
    with pytest.raises(UnknownTermError):
        converter.from_term(CUT)
    with pytest.raises(UnknownTermError):
        converter.from_term(ListTerm(Atom("a"), Variable("T")))


@pytest.mark.domain
def test_references(converter):
    """Test that opaque host values travel as references."""
    payload = Payload()
    term = converter.to_term(payload)
    assert isinstance(term, Reference), "An opaque value becomes a reference"
    assert converter.to_term(payload) is term, "The same value reuses its reference"
    assert converter.from_term(term) is payload, "The reference gives back the identical value"
    assert converter.from_term(Structure("box", (term,))) == HostStructure("box", (payload,)), "Nested reference"
    assert converter.to_term(TRUE) is TRUE, "Terms are returned as is"


@pytest.mark.domain
def test_narrow_widths(converter):
    """Test that narrow widths collapse into integers and come back with a typed conversion."""
    term = converter.to_term(np.int8(5))
    assert term == Integer(5), "A byte becomes an integer term"
    value = converter.from_term(term)
    assert value == 5 and type(value) is int, "The plain conversion gives an int"
    byte = converter.typed_conversion(value, HostKind.BYTE)
    assert type(byte) is np.int8 and byte == 5, "The typed conversion restores the byte"
    assert type(converter.from_term(Integer(65), HostKind.CHAR)) is np.uint16, "Char width"
    assert type(converter.from_term(Integer(1), HostKind.LONG)) is np.int64, "Long width"
    assert type(converter.from_term(Integer(1), HostKind.FLOAT)) is np.float32, "Float width"
    assert type(converter.from_term(Integer(1), HostKind.DOUBLE)) is float, "Double width"
    with pytest.raises(PrologError):
        converter.typed_conversion(300, HostKind.BYTE)
    with pytest.raises(PrologError):
        converter.from_term(Integer(-1), HostKind.CHAR)
    with pytest.raises(PrologError):
        converter.from_term(Double(2.5), HostKind.INTEGER)
    assert converter.from_term(Double(2.0), HostKind.SHORT) == np.int16(2), "Integral doubles are accepted"


@pytest.mark.domain
def test_typed_host_kinds(converter):
    """Test the non numeric typed conversions."""
    assert converter.from_term(NIL, HostKind.NULL) is None, "nil is null"
    assert converter.from_term(TRUE, HostKind.BOOLEAN) is True, "true is a boolean"
    assert converter.from_term(FALSE, HostKind.BOOLEAN) is False, "false is a boolean"
    assert converter.from_term(Atom("cat"), HostKind.TEXT) == "cat", "An atom is text"
    assert converter.from_term(new_list([Integer(1)]), HostKind.SEQUENCE) == [1], "A list is a sequence"
    assert converter.from_term(Integer(3), HostKind.OBJECT) == 3, "Object is the plain conversion"
    for term, kind in [
        (Atom("cat"), HostKind.NULL),
        (Atom("cat"), HostKind.BOOLEAN),
        (Integer(1), HostKind.TEXT),
        (Atom("cat"), HostKind.SEQUENCE),
        (Atom("cat"), HostKind.INTEGER),
    ]:
        with pytest.raises(PrologError):
            converter.from_term(term, kind)


@pytest.mark.domain
def test_cast(converter):
    """Test the term kind casts."""
    assert converter.to_term(5, TermType.LONG) == Long(5), "Widen to long"
    assert converter.to_term(5, TermType.DOUBLE) == Double(5.0), "Integer to double"
    assert converter.to_term(2.0, TermType.INTEGER) == Integer(2), "Integral double to integer"
    assert converter.to_term("cat", TermType.ATOM) == Atom("cat"), "Atom kind"
    assert converter.cast(Integer(5), TermType.INTEGER) == Integer(5), "Same kind"
    reference = converter.to_term(5, TermType.REFERENCE)
    assert isinstance(reference, Reference) and reference.obj == 5, "Reference to the host value"
    with pytest.raises(PrologError):
        converter.to_term(2.5, TermType.INTEGER)
    with pytest.raises(PrologError):
        converter.to_term("cat", TermType.DOUBLE)
    with pytest.raises(PrologError):
        converter.to_term(5, TermType.STRUCTURE)
    with pytest.raises(PrologError):
        converter.to_term(2**40, TermType.INTEGER)


@pytest.mark.domain
def test_multi_valued(converter):
    """Test the array, matrix and map conversions."""
    assert converter.to_term_array([1, "a", None]) == [Integer(1), Atom("a"), NIL], "Array to terms"
    assert converter.from_term_array([Integer(1), Atom("a")]) == [1, "a"], "Terms to array"
    assert converter.to_term_matrix([[1], [2]]) == [[Integer(1)], [Integer(2)]], "Matrix to terms"
    assert converter.to_object_lists([[Atom("x"), TRUE]]) == [["x", True]], "Solutions to host lists"
    assert converter.to_term_map({"X": 1}) == {"X": Integer(1)}, "Map keys are kept"
    assert converter.to_object_maps([{"X": Atom("bear")}]) == [{"X": "bear"}], "Solution maps to host maps"
    assert converter.to_term_map_array([{"X": 1}, {"Y": "b"}]) == [{"X": Integer(1)}, {"Y": Atom("b")}], "Maps"
    with pytest.raises(UnknownTermError, match="at index 1"):
        converter.from_term_array([Integer(1), Variable("X")])
    with pytest.raises(UnknownTermError, match="at key Y"):
        converter.to_object_map({"X": Integer(1), "Y": Variable("Y")})


@pytest.mark.domain
def test_helpers():
    """Test the char and quote helpers."""
    assert char("A") == np.uint16(65) and type(char("A")) is np.uint16, "Char code"
    with pytest.raises(PrologError):
        char("AB")
    assert contain_quotes("'x'") and not contain_quotes("x"), "Quote detection"
    assert remove_quotes("'x'") == "x" and remove_quotes("x") == "x", "One layer removed"
    assert remove_quotes("''x''") == "'x'", "Only one layer"
