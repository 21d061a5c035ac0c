import math
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from evcom.groups import EnumerationCapError, generate
from evcom.harness import naive_closure
from evcom.perm import Permutation, PermutationError, compose, inverse, parse_perm

from conftest import perms


def cyc(text, k):
    return parse_perm(text, k)


def test_s4_standard_generators():
    assert generate(4, [cyc("(1 2)", 4), cyc("(1 2 3 4)", 4)]).order() == 24


def test_trivial():
    g = generate(5, [])
    assert g.order() == 1
    assert not g.is_full() and not g.contains_alternating()


def test_product_of_symmetric_groups():
    g = generate(8, [cyc("(1 2)", 8), cyc("(2 3)", 8), cyc("(7 8)", 8)])
    assert g.order() == 12


def test_membership_examples():
    g = generate(3, [cyc("(1 2 3)", 3)])
    assert g.contains(cyc("(1 3 2)", 3))
    assert not g.contains(cyc("(1 2)", 3))
    s5 = generate(5, [cyc("(1 2)", 5), cyc("(1 2 3 4 5)", 5)])
    assert all(s5.contains(Permutation.from_raw(p)) for p in permutations(range(5)))


def test_alternating_a4():
    g = generate(4, [cyc("(1 2 3)", 4), cyc("(2 3 4)", 4)])
    assert g.order() == 12
    assert g.contains_alternating() and not g.is_full()


def test_s2_full():
    assert generate(2, [cyc("(1 2)", 2)]).is_full()


def test_size_mismatch():
    with pytest.raises(PermutationError):
        generate(3, [cyc("(1 2)", 4)])
    with pytest.raises(PermutationError):
        generate(3, []).contains(cyc("(1 2)", 4))


def test_enumeration_cap():
    g = generate(6, [cyc("(1 2)", 6), cyc("(1 2 3 4 5 6)", 6)], enumeration_cap=100)
    with pytest.raises(EnumerationCapError, match="cap 100"):
        list(g.enumerate())


generator_sets = st.integers(1, 6).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(perms(size=k), max_size=3)))


@given(generator_sets)
def test_matches_naive_closure(data):
    k, gens = data
    g = generate(k, gens)
    closure = naive_closure(k, gens)
    assert g.order() == len(closure)
    assert math.factorial(k) % g.order() == 0
    assert g.is_full() == (g.order() == math.factorial(k))
    assert all(g.contains(x) for x in gens)
    for raw in permutations(range(k)):
        assert g.contains(Permutation.from_raw(raw)) == (raw in closure)


@given(generator_sets, st.data())
def test_closed_under_products(data, draw):
    k, gens = data
    g = generate(k, gens)
    elems = list(g.enumerate())
    a = draw.draw(st.sampled_from(elems))
    b = draw.draw(st.sampled_from(elems))
    assert g.contains(compose(a, b))
    assert g.contains(inverse(a))


@given(generator_sets)
def test_enumeration_lexicographic_and_exact(data):
    k, gens = data
    g = generate(k, gens)
    elems = list(g.enumerate())
    assert len(elems) == g.order() == len(set(elems))
    assert elems == sorted(elems)
    assert all(g.contains(x) for x in elems)


@given(generator_sets)
def test_alternating_flag(data):
    k, gens = data
    g = generate(k, gens)
    even = {p for p in naive_closure(k, gens) if Permutation.from_raw(p).parity() == 1}
    all_even = sum(1 for p in permutations(range(k)) if Permutation.from_raw(p).parity() == 1)
    assert g.contains_alternating() == (len(even) == all_even)
