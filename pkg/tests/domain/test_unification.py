import itertools

import pytest

from app.domain.models.term import Atom, Integer, ListTerm, Long, Double, Structure, Variable, new_list
from app.domain.services.unification import is_variant, rename, substitute, unify, variables_of, walk

X, Y = Variable("X"), Variable("Y")
LEAVES = [Atom("a"), Atom("b"), Integer(1), Integer(2)]


def _terms(leaves: list) -> list:
    """Leaves and every f/2 structure over them."""
    return leaves + [Structure("f", (left, right)) for left, right in itertools.product(leaves, repeat=2)]


ALPHABET = _terms(LEAVES + [X, Y])
GROUND = _terms(LEAVES)


def _occurring(*terms) -> list[Variable]:
    return [variable for variable in (X, Y) if variable in variables_of(terms)]


def _ground_unifiers(left, right):
    """Every assignment of the occurring variables to ground terms that makes both sides equal."""
    variables = _occurring(left, right)
    for values in itertools.product(GROUND, repeat=len(variables)):
        theta = dict(zip(variables, values))
        if substitute(left, theta) == substitute(right, theta):
            yield theta


@pytest.mark.domain
def test_unify_against_enumeration_oracle():
    """Test unify on every pair of the alphabet against the enumeration of ground substitutions."""
    disagreements = []
    for left, right in itertools.product(ALPHABET, repeat=2):
        sigma = unify(left, right, occurs_check=True)
        unifiers = list(_ground_unifiers(left, right))
        if (sigma is not None) != bool(unifiers):
            disagreements.append((left, right))
            continue
        if sigma is None:
            continue
        assert substitute(left, sigma) == substitute(right, sigma), f"{sigma} should unify {left} and {right}"
        # every ground unifier is an instance of the most general one
        for theta in unifiers:
            for variable in _occurring(left, right):
                assert substitute(substitute(variable, sigma), theta) == theta[variable], "Not most general"
    assert not disagreements, f"Disagreements with the oracle: {disagreements[:5]}"


@pytest.mark.domain
def test_ground_unification_is_equality():
    """Test that ground terms unify exactly when they are equal."""
    for left, right in itertools.product(GROUND, repeat=2):
        assert (unify(left, right) is not None) == (left == right), f"{left} and {right}"


@pytest.mark.domain
def test_number_families():
    """Test that numbers unify inside their family only."""
    assert unify(Integer(1), Long(1)) is not None, "Integer widths unify by value"
    assert unify(Integer(1), Double(1.0)) is None, "Integers never unify with floats"
    assert unify(Atom("1"), Integer(1)) is None, "Atoms never unify with numbers"


@pytest.mark.domain
def test_occurs_check():
    """Test the occurs check option."""
    cyclic = Structure("f", (X,))
    assert unify(X, cyclic, occurs_check=True) is None, "X = f(X) is rejected"
    assert unify(X, cyclic) == {X: cyclic}, "Without the check the binding is made"


@pytest.mark.domain
def test_substitution_helpers():
    """Test walk, substitute, variables_of, rename and is_variant."""
    tail = Variable("T")
    bindings = unify(new_list([X], tail), new_list([Atom("a"), Atom("b")]))
    assert walk(X, bindings) == Atom("a"), "X is bound to a"
    assert substitute(new_list([X], tail), bindings) == new_list([Atom("a"), Atom("b")]), "The list is closed"
    assert unify(X, Atom("a"), {X: Atom("b")}) is None, "The given bindings are honored"

    term = Structure("f", (Y, ListTerm(X, Y)))
    assert variables_of([term]) == [Y, X], "First occurrence order without duplicates"
    renamed = rename(term, {})
    assert renamed != term and is_variant(renamed, term), "Renaming gives a variant"
    assert all(variable.is_anonymous() for variable in variables_of([renamed])), "Fresh anonymous variables"
    assert not is_variant(Structure("f", (X, X)), Structure("f", (X, Y))), "Sharing is part of the variant"
    assert not is_variant(Structure("f", (X,)), Structure("f", (Atom("a"),))), "A binding is not a variant"
