import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.domain.models.term import Atom, Double, Float, Integer, ListTerm, Long, Structure, Variable
from app.domain.services.ordering import compare_terms, sort_terms
from tests.term_strategies import mixed_terms


def _rank(term) -> int:
    if term.is_variable():
        return 0
    if term.is_atom():
        return 1
    if term.is_number():
        return 2
    return 3


@pytest.mark.domain
def test_class_order():
    """Test that variables come before atoms, atoms before numbers and numbers before compounds."""
    ordered = [Variable("X"), Atom("zebra"), Integer(-5), Structure("a", (Atom("a"),))]
    for left, right in zip(ordered, ordered[1:]):
        assert compare_terms(left, right) < 0, f"{left} should come before {right}"
        assert left < right, "The rich comparison should follow the standard order"


@pytest.mark.domain
def test_atomic_order():
    """Test the order inside each class."""
    assert Atom("apple") < Atom("banana"), "Atoms compare alphabetically"
    assert Integer(2) < Double(2.5) < Integer(3), "Numbers compare by value across widths"
    assert Integer(1) < Long(1) < Float(1.0) < Double(1.0), "Equal values are ordered by width"
    assert compare_terms(Double(0.0), Double(-0.0)) == 0, "Signed zeros are equal"
    assert Variable("A", 0) < Variable("B", 1), "Variables compare by position"
    assert compare_terms(Variable("X"), Variable("X")) == 0, "A variable equals itself"


@pytest.mark.domain
def test_compound_order():
    """Test that compounds compare by arity, then functor, then arguments."""
    assert Structure("z", (Atom("a"),)) < Structure("a", (Atom("a"), Atom("b"))), "Arity first"
    assert Structure("a", (Atom("z"),)) < Structure("b", (Atom("a"),)), "Functor second"
    assert Structure("f", (Atom("a"), Integer(2))) < Structure("f", (Atom("a"), Integer(3))), "Arguments last"
    assert ListTerm(Atom("a"), Atom("b")) < Structure("f", (Atom("a"), Atom("b"))), "'.' sorts before 'f'"


@pytest.mark.domain
@settings(max_examples=1000, deadline=None)
@given(st.lists(mixed_terms, min_size=1, max_size=12), st.randoms(use_true_random=False))
def test_sort_segregates_classes(terms, rng: random.Random):
    """Test that sorting a shuffled mixed list groups the classes in the standard order."""
    shuffled = list(terms)
    rng.shuffle(shuffled)
    ordered = sort_terms(shuffled)
    ranks = [_rank(term) for term in ordered]
    assert ranks == sorted(ranks), f"Classes should be segregated, got {ranks}"
    assert ordered == sort_terms(list(reversed(terms))), "The order should not depend on the input order"


@pytest.mark.domain
@settings(max_examples=1000, deadline=None)
@given(mixed_terms, mixed_terms, mixed_terms)
def test_order_is_total(a, b, c):
    """Test antisymmetry, transitivity and the agreement with equality."""
    assert compare_terms(a, a) == 0, "Reflexive"
    assert compare_terms(a, b) == -compare_terms(b, a), "Antisymmetric"
    assert (compare_terms(a, b) == 0) == (a == b), "Zero exactly for equal terms"
    if compare_terms(a, b) <= 0 and compare_terms(b, c) <= 0:
        assert compare_terms(a, c) <= 0, "Transitive"
