from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from evcom.oracle import (
    ABSENT,
    ZERO,
    OracleCapError,
    build_graph,
    equivalent,
    identity_group,
    identity_group_raw,
    multiplicative_order,
    nilpotent_at,
)
from evcom.perm import Permutation, TwoTermIdentity, compose, in_S_nab, inverse, parse_perm
from evcom.saturation import saturate

from conftest import perms


def ident(text, k=None, q=1):
    return TwoTermIdentity(parse_perm(text, k), Fraction(q))


def P(*images):
    return Permutation(images)


def test_commutativity_degree3_single_component():
    g = build_graph(ident("(1 2)", 2), 3)
    assert g.components() == [(6, False)]


def test_sign_flip_degree3_dead():
    g = build_graph(ident("(1 2)", 2, q=-1), 3)
    assert all(dead for _, dead in g.components())


def test_reversal_cosets():
    g = build_graph(ident("[3,2,1]"), 3)
    assert sorted(size for size, _ in g.components()) == [2, 2, 2]
    assert identity_group(g) == {P(1, 2, 3), P(3, 2, 1)}


def test_equivalent_examples():
    assert equivalent(build_graph(ident("(1 2)", 2), 2), P(1, 2), P(2, 1)) == 1
    assert equivalent(build_graph(ident("(1 2)", 2, q=2), 2), P(1, 2), P(2, 1)) is ZERO
    assert equivalent(build_graph(ident("[3,2,1]"), 3), P(1, 2, 3), P(2, 1, 3)) is ABSENT


def test_scalar_direction():
    # over the rationals any q with q**3 != 1 kills degree 3; 2 has order 3 mod 7
    g = build_graph(ident("[2,3,1]", q=2), 3, prime=7)
    assert equivalent(g, P(1, 2, 3), P(2, 3, 1)) == 2
    assert equivalent(g, P(2, 3, 1), P(1, 2, 3)) == 4
    g = build_graph(ident("[2,1]", q=-1), 2)
    assert equivalent(g, P(1, 2), P(2, 1)) == -1


def test_transposition_1_5_degree6():
    assert len(identity_group_raw(build_graph(ident("(1 5)", 5), 6))) == 720


def test_sharpness_degree6_proper_and_bordered():
    found = identity_group(build_graph(ident("(1 2)(4 5)", 5), 6))
    assert 1 < len(found) < 720
    assert all(in_S_nab(t, 3, 3) for t in found)


def test_nilpotent_examples():
    i = ident("(1 2)", 2, q=-1)
    assert not nilpotent_at(i, 2)
    assert nilpotent_at(i, 3)


def test_cap():
    with pytest.raises(OracleCapError, match="k <= 8"):
        build_graph(ident("[2,1]"), 9)


def test_prime_mode():
    assert multiplicative_order(Fraction(2), 7) == 3
    assert multiplicative_order(Fraction(-1)) == 2 and multiplicative_order(Fraction(3)) is None
    # 2 has order 3 mod 7 but the degree-2 cycle has weight 2**2 = 4 != 1
    assert nilpotent_at(ident("(1 2)", 2, q=2), 2, prime=7)
    # -1 = 6 mod 7: same verdicts as over the rationals
    assert not nilpotent_at(ident("(1 2)", 2, q=6), 2, prime=7)
    assert nilpotent_at(ident("(1 2)", 2, q=6), 3, prime=7)


identities = st.integers(2, 4).flatmap(lambda n: perms(size=n))


@given(identities, st.integers(0, 2))
def test_identity_group_is_a_group(sigma, extra):
    k = sigma.size + extra
    found = identity_group(build_graph(TwoTermIdentity(sigma), k))
    assert Permutation.identity(k) in found
    for a in found:
        assert inverse(a) in found
        for b in found:
            assert compose(a, b) in found


@given(identities, st.integers(0, 2))
def test_q1_never_dead(sigma, extra):
    g = build_graph(TwoTermIdentity(sigma), sigma.size + extra)
    assert not any(dead for _, dead in g.components())


@given(identities, st.sampled_from([2, -1, Fraction(1, 2), 3]))
def test_nilpotency_monotone(sigma, q):
    i = TwoTermIdentity(sigma, Fraction(q))
    verdicts = [nilpotent_at(i, k) for k in range(sigma.size, 7)]
    assert verdicts == sorted(verdicts)


@given(identities, st.integers(0, 2), st.data())
def test_rerooting_invariance(sigma, extra, data):
    """Answers depend only on the relation, not on insertion order."""
    k = sigma.size + extra
    i = TwoTermIdentity(sigma, Fraction(2))
    g = build_graph(i, k)
    a = Permutation.from_raw(data.draw(st.permutations(range(k))))
    b = Permutation.from_raw(data.draw(st.permutations(range(k))))
    ab, ba = equivalent(g, a, b), equivalent(g, b, a)
    if ab in (ZERO, ABSENT):
        assert ba is ab
    else:
        assert ab * ba == 1
        assert g.potential(a) == ab * g.potential(b)


@pytest.mark.parametrize("q", [2, -1, Fraction(1, 2)])
@pytest.mark.parametrize("n", [3, 4])
def test_scaled_saturation_matches_oracle(n, q):
    for raw in permutations(range(n)):
        sigma = Permutation.from_raw(raw)
        if sigma.is_identity():
            continue
        i = TwoTermIdentity(sigma, Fraction(q))
        rep = saturate(i, 6, stop_at_success=False, check_stability=False)
        oracle_nil = next((k for k in range(n, 7) if nilpotent_at(i, k)), None)
        assert rep.nilpotency_degree == oracle_nil, sigma
        for rec in rep.chain:
            if rec.vanishes:
                continue
            found = identity_group_raw(build_graph(i, rec.k))
            expected = {p.raw for p, w in rep.group(rec.k).enumerate_scaled() if w == 1}
            assert found == expected, (sigma, rec.k)


def test_block_swap_degree5_is_alternating():
    """x1x2x3x4 = x3x4x1x2: every degree-5 consequence swaps two adjacent
    blocks of lengths a, b >= 2 with a + b <= 5, an even permutation."""
    i = ident("[3,4,1,2]")
    assert len(identity_group_raw(build_graph(i, 5))) == 60
    assert all(Permutation.from_raw(w).parity() == 1 for w in identity_group_raw(build_graph(i, 5)))
    assert len(identity_group_raw(build_graph(i, 6))) == 720
    assert saturate(i).ec_degree == 6
