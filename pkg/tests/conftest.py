from hypothesis import settings, strategies as st

from evcom.perm import Permutation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def perms(draw, min_size=1, max_size=6, size=None):
    k = size if size is not None else draw(st.integers(min_size, max_size))
    return Permutation.from_raw(draw(st.permutations(range(k))))


@st.composite
def perm_pairs(draw, min_size=1, max_size=6):
    k = draw(st.integers(min_size, max_size))
    return draw(perms(size=k)), draw(perms(size=k))
