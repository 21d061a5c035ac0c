from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from evcom.perm import (
    Permutation,
    PermutationError,
    TwoTermIdentity,
    block_decompose,
    compose,
    format_perm,
    hat_cycle,
    in_S_nab,
    inverse,
    parity,
    parse_perm,
    parse_rational,
)

from conftest import perms


def P(*images):
    return Permutation(images)


class TestParse:
    def test_cycle_transposition(self):
        assert parse_perm("(1 5)", 5) == P(5, 2, 3, 4, 1)

    def test_oneline_five_cycle(self):
        p = parse_perm("[2,3,4,5,1]")
        assert p.cycles() == [(1, 2, 3, 4, 5)]
        assert format_perm(p, "cycles") == "(1 2 3 4 5)"

    def test_repeated_image(self):
        with pytest.raises(PermutationError, match="repeated image 2"):
            parse_perm("[2,2,1]")

    @pytest.mark.parametrize("text,k,msg", [
        ("(1 2)(2 3)", 3, "repeated letter 2"),
        ("(1 6)", 5, "letter 6 exceeds size 5"),
        ("(1 2)", None, "requires an explicit size"),
        ("[1,x]", None, "non-integer"),
        ("[0,1]", None, "."),
        ("1 2", None, "cannot parse"),
    ])
    def test_errors(self, text, k, msg):
        with pytest.raises(PermutationError, match=msg):
            parse_perm(text, k)

    def test_empty_cycle_is_identity(self):
        assert parse_perm("()", 4) == Permutation.identity(4)

    def test_oneline_size_mismatch(self):
        with pytest.raises(PermutationError, match="expected 4"):
            parse_perm("[2,1,3]", 4)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_round_trip_exhaustive(self, k):
        for raw in permutations(range(k)):
            p = Permutation.from_raw(raw)
            assert parse_perm(format_perm(p)) == p
            assert parse_perm(format_perm(p, "cycles"), k) == p

    def test_rational(self):
        assert parse_rational("-3/6") == parse_rational("-1/2")
        assert parse_rational("7") == 7
        with pytest.raises(ValueError):
            parse_rational("1/0")


class TestAlgebra:
    def test_convention(self):
        a, b = P(2, 1, 3), P(1, 3, 2)
        # (a*b)(1) = a(b(1)) = a(1) = 2
        assert compose(a, b)(1) == 2
        assert compose(a, b) == P(2, 3, 1)

    @given(st.integers(1, 6).flatmap(lambda k: st.tuples(*[perms(size=k)] * 3)))
    def test_associative(self, abc):
        a, b, c = abc
        assert compose(compose(a, b), c) == compose(a, compose(b, c))

    @given(st.integers(1, 6).flatmap(lambda k: st.tuples(perms(size=k), perms(size=k))))
    def test_parity_homomorphism(self, ab):
        a, b = ab
        assert parity(compose(a, b)) == parity(a) * parity(b)
        assert parity(a) in (1, -1)

    @given(perms())
    def test_inverse(self, a):
        assert compose(a, inverse(a)).is_identity()
        assert a.order() >= 1
        assert (a * a.inverse()) == Permutation.identity(a.size)

    @pytest.mark.parametrize("k", range(1, 8))
    def test_hat_cycle(self, k):
        for i in range(1, k + 1):
            h = hat_cycle(i, k)
            assert compose(h, inverse(h)).is_identity()
            assert h.order() == k - i + 1

    def test_size_mismatch(self):
        with pytest.raises(PermutationError):
            compose(P(1, 2), P(1, 2, 3))

    @pytest.mark.parametrize("k", range(1, 7))
    def test_S_nab_closed(self, k):
        elems = [Permutation.from_raw(r) for r in permutations(range(k))]
        for a_ in range(0, k + 1):
            for b_ in range(0, k + 1 - a_):
                members = [t for t in elems if in_S_nab(t, a_, b_)]
                mset = set(members)
                assert Permutation.identity(k) in mset
                for x in members:
                    assert inverse(x) in mset
                    for y in members:
                        assert compose(x, y) in mset


class TestBlocks:
    def test_examples(self):
        d = block_decompose(P(1, 2, 5, 4, 3, 6))
        assert (d.i, d.j, d.core) == (2, 5, P(3, 2, 1))
        assert block_decompose(Permutation.identity(3)).is_empty

    @pytest.mark.parametrize("k", range(1, 7))
    def test_core_moves_its_ends(self, k):
        for raw in permutations(range(k)):
            d = block_decompose(Permutation.from_raw(raw))
            if d.core is not None:
                c = d.core
                assert c(1) != 1 and c(c.size) != c.size


def test_identity_rejects_zero_q():
    with pytest.raises(ValueError):
        TwoTermIdentity(P(2, 1), 0)
    assert str(TwoTermIdentity(P(2, 1), 2)) == "x1x2 = (2)x2x1"
