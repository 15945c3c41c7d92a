"""Conversion between host values and terms.

Host numeric widths follow numpy scalars: ``np.int8`` is a byte, ``np.int16`` a short, ``np.uint16`` a char,
``np.int32`` an integer, ``np.int64`` a long, ``np.float32`` a float and ``float`` a double. Plain ``int`` values take
the narrowest integral term. Bytes, shorts and chars become integer terms, so their width is lost unless the caller
asks for it back with a typed conversion.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from app.core.errors import PrologError, UnknownTermError
from app.domain.models.term import (
    FAIL,
    NIL,
    TRUE,
    Atom,
    Double,
    Float,
    Integer,
    ListTerm,
    Long,
    Number,
    Reference,
    Structure,
    Term,
    Variable,
    integral_term,
    new_list,
    reference_for,
)
from app.domain.schemas.types import HostKind, TermType

_NARROW = {
    HostKind.BYTE: np.int8,
    HostKind.SHORT: np.int16,
    HostKind.CHAR: np.uint16,
    HostKind.INTEGER: np.int32,
    HostKind.LONG: np.int64,
}


@dataclass(frozen=True, slots=True)
class HostStructure:
    """Host side value of a structure: its functor and converted arguments."""

    functor: str
    args: tuple[Any, ...]


def char(value: str) -> np.uint16:
    """Host char value of a one character string."""
    if len(value) != 1:
        raise PrologError(f"A char is a single character, got {value!r}")
    return np.uint16(ord(value))


def contain_quotes(functor: str) -> bool:
    """Check if the functor starts and ends with a single quote."""
    return len(functor) >= 2 and functor[0] == "'" and functor[-1] == "'"


def remove_quotes(functor: str) -> str:
    """Remove one layer of surrounding quotes if present."""
    return functor[1:-1] if contain_quotes(functor) else functor


# texts that would otherwise read back as nil, booleans, the cut or the empty list
_RESERVED_TEXTS = frozenset(("nil", "true", "fail", "false", "!", "[]"))


def text_atom(value: str) -> Atom:
    """Atom standing for a host text, ``remove_quotes`` of its functor gives the text back."""
    if value in _RESERVED_TEXTS or contain_quotes(value):
        return Atom(f"'{value}'")
    return Atom(value)


class HostConverter:
    """Bidirectional converter between host values and terms."""

    # primitive conversion
    def to_term(self, value: Any, kind: TermType | None = None) -> Term:
        """Convert a host value into a term, optionally of a requested kind.

        Args:
            value (Any): host value, a term is returned as is
            kind (TermType, optional): requested term kind. Defaults to None.

        Raises:
            PrologError: when the requested kind is incompatible with the value

        Returns:
            Term: the equivalent term
        """
        term = self._to_term(value)
        return term if kind is None else self.cast(term, kind)

    def _to_term(self, value: Any) -> Term:
        if isinstance(value, Term):
            return value
        if value is None:
            return NIL
        if isinstance(value, (bool, np.bool_)):
            return TRUE if value else FAIL
        if isinstance(value, str):
            return text_atom(value)
        if isinstance(value, (np.int8, np.int16, np.uint16, np.int32)):
            return Integer(int(value))
        if isinstance(value, np.int64):
            return Long(int(value))
        if isinstance(value, (int, np.integer)):
            return integral_term(int(value))
        if isinstance(value, np.float32):
            return Float(float(value))
        if isinstance(value, (float, np.floating)):
            return Double(float(value))
        if isinstance(value, (list, tuple)):
            return new_list([self._to_term(item) for item in value])
        if isinstance(value, HostStructure):
            return Structure(value.functor, tuple(self._to_term(argument) for argument in value.args))
        return reference_for(value)

    def from_term(self, term: Term, kind: HostKind | None = None) -> Any:
        """Convert a term into a host value, optionally of a requested kind.

        Raises:
            UnknownTermError: when the term has no host equivalent, like a free variable
            PrologError: when the requested kind is incompatible or out of range
        """
        if kind is None:
            return self._from_term(term)
        return self._typed_host(term, kind)

    def _from_term(self, term: Term) -> Any:
        if isinstance(term, Variable):
            raise UnknownTermError(f"The variable {term.name} has no host equivalent")
        if isinstance(term, Atom):
            if term.is_nil():
                return None
            if term.is_true():
                return True
            if term.is_false():
                return False
            if term.is_cut():
                raise UnknownTermError("The cut has no host equivalent")
            if term.is_empty_list():
                return []
            return remove_quotes(term.functor)
        if isinstance(term, Number):
            return term.value
        if isinstance(term, ListTerm):
            tail = term.last_tail()
            if tail.is_empty_list():
                return [self._from_term(item) for item in term]
            if isinstance(tail, Variable):
                raise UnknownTermError(f"The partial list {term} has no host equivalent")
            return HostStructure(".", (self._from_term(term.head), self._from_term(term.tail)))
        if isinstance(term, Reference):
            return term.obj
        if isinstance(term, Structure):
            return HostStructure(term.functor, tuple(self._from_term(argument) for argument in term.arguments))
        raise UnknownTermError(f"The term {term!r} has no host equivalent")

    # typed conversion
    def typed_conversion(self, value: Any, kind: TermType | HostKind) -> Any:
        """Convert to the requested kind, a term kind gives a term and a host kind gives a host value."""
        if isinstance(kind, TermType):
            return self.to_term(value, kind)
        return self.from_term(self.to_term(value), kind)

    def cast(self, term: Term, kind: TermType) -> Term:
        """Cast a term to the requested term kind without changing its value."""
        if term.type is kind:
            return term
        if kind in (TermType.INTEGER, TermType.LONG, TermType.FLOAT, TermType.DOUBLE):
            if not isinstance(term, Number):
                raise PrologError(f"The term {term} can not be converted to {kind.name.lower()}")
            value = term.value
            if kind in (TermType.INTEGER, TermType.LONG):
                if isinstance(value, float) and not value.is_integer():
                    raise PrologError(f"The value {value} is not integral")
                return (Integer if kind is TermType.INTEGER else Long)(int(value))
            return (Float if kind is TermType.FLOAT else Double)(float(value))
        if kind is TermType.ATOM and term.is_atom():
            return term
        if kind is TermType.LIST and term.is_list():
            return term
        if kind is TermType.STRUCTURE and term.is_structure():
            return term
        if kind is TermType.REFERENCE:
            return reference_for(self._from_term(term))
        raise PrologError(f"The term {term} can not be converted to {kind.name.lower()}")

    def _typed_host(self, term: Term, kind: HostKind) -> Any:
        if kind is HostKind.OBJECT:
            return self._from_term(term)
        if kind is HostKind.NULL:
            if not term.is_nil():
                raise PrologError(f"The term {term} is not nil")
            return None
        if kind is HostKind.BOOLEAN:
            if term.is_true():
                return True
            if term.is_false():
                return False
            raise PrologError(f"The term {term} is not a boolean constant")
        if kind is HostKind.TEXT:
            if not term.is_atom():
                raise PrologError(f"The term {term} is not an atom")
            return remove_quotes(term.functor)
        if kind is HostKind.SEQUENCE:
            if not term.is_list():
                raise PrologError(f"The term {term} is not a list")
            return self._from_term(term)
        if not isinstance(term, Number):
            raise PrologError(f"The term {term} is not a number")
        value = term.value
        if kind is HostKind.FLOAT:
            return np.float32(value)
        if kind is HostKind.DOUBLE:
            return float(value)
        if isinstance(value, float) and not value.is_integer():
            raise PrologError(f"The value {value} is not integral for {kind.name.lower()}")
        width = _NARROW[kind]
        bounds = np.iinfo(width)
        if not bounds.min <= int(value) <= bounds.max:
            raise PrologError(f"The value {value} is out of the {kind.name.lower()} range")
        return width(int(value))

    # multi valued conversion
    def to_term_array(self, values: Sequence[Any]) -> list[Term]:
        """Convert each host value into a term."""
        return [self._element(self.to_term, value, f"index {index}") for index, value in enumerate(values)]

    def from_term_array(self, terms: Sequence[Term]) -> list[Any]:
        """Convert each term into a host value."""
        return [self._element(self.from_term, term, f"index {index}") for index, term in enumerate(terms)]

    to_objects_array = from_term_array

    def to_term_matrix(self, rows: Sequence[Sequence[Any]]) -> list[list[Term]]:
        """Convert a matrix of host values into a matrix of terms."""
        return [self.to_term_array(row) for row in rows]

    def to_object_lists(self, rows: Sequence[Sequence[Term]]) -> list[list[Any]]:
        """Convert a matrix of terms, e.g. query solutions, into host lists."""
        return [self.from_term_array(row) for row in rows]

    def to_term_map(self, mapping: Mapping[str, Any]) -> dict[str, Term]:
        """Convert the values of a host map into terms, keys are kept."""
        return {key: self._element(self.to_term, value, f"key {key}") for key, value in mapping.items()}

    def to_object_map(self, mapping: Mapping[str, Term]) -> dict[str, Any]:
        """Convert the values of a solution map into host values, keys are kept."""
        return {key: self._element(self.from_term, value, f"key {key}") for key, value in mapping.items()}

    def to_term_map_array(self, mappings: Sequence[Mapping[str, Any]]) -> list[dict[str, Term]]:
        """Convert each host map into a term map."""
        return [self.to_term_map(mapping) for mapping in mappings]

    def to_object_maps(self, mappings: Sequence[Mapping[str, Term]]) -> list[dict[str, Any]]:
        """Convert each solution map into a host map."""
        return [self.to_object_map(mapping) for mapping in mappings]

    @staticmethod
    def _element(convert: Any, value: Any, where: str) -> Any:
        try:
            return convert(value)
        except PrologError as e:
            raise type(e)(f"{e.message} at {where}") from e

    contain_quotes = staticmethod(contain_quotes)
    remove_quotes = staticmethod(remove_quotes)


