"""Permutations of {1..k}, read both as group elements and as multilinear monomials.

A permutation ``t`` stands for the monomial ``x_{t(1)} x_{t(2)} ... x_{t(k)}``.
Composition is ``(a * b)(t) = a(b(t))``; with that convention substitution acts
on the left (``a . x_b = x_{a*b}``) and place permutation on the right
(``x_b . c = x_{b*c}``).

All public input and output is 1-based. Internally images are stored as a
0-based tuple, which is also the "raw" form used by the hot loops in
:mod:`evcom.groups` and :mod:`evcom.saturation`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Raw = tuple[int, ...]


class PermutationError(ValueError):
    """Malformed permutation text or an invalid permutation argument."""


# --- raw (0-based tuple) helpers ------------------------------------------------

def raw_compose(a: Raw, b: Raw) -> Raw:
    return tuple([a[x] for x in b])


def raw_inverse(a: Raw) -> Raw:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def raw_identity(k: int) -> Raw:
    return tuple(range(k))


def raw_hat_cycle(i: int, k: int) -> Raw:
    """The cycle (i, i+1, ..., k) as a raw tuple; ``i`` is 1-based."""
    img = list(range(k))
    if i < k:
        for t in range(i - 1, k - 1):
            img[t] = t + 1
        img[k - 1] = i - 1
    return tuple(img)


# --- public type ----------------------------------------------------------------

class Permutation:
    """An element of S_k; ``images[t-1] == p(t)``.

    Instances are immutable and hashable. Ordering is lexicographic by
    one-line form.
    """

    __slots__ = ("_img",)

    def __init__(self, images: Iterable[int]):
        img = tuple(int(x) for x in images)
        k = len(img)
        if k < 1:
            raise PermutationError("a permutation needs at least one letter")
        seen = set()
        for pos, x in enumerate(img, start=1):
            if not 1 <= x <= k:
                raise PermutationError(f"image {x} at position {pos} outside 1..{k}")
            if x in seen:
                raise PermutationError(f"repeated image {x} at position {pos}")
            seen.add(x)
        object.__setattr__(self, "_img", tuple(x - 1 for x in img))

    @classmethod
    def from_raw(cls, raw: Sequence[int]) -> "Permutation":
        """Wrap a 0-based image tuple without validation."""
        p = object.__new__(cls)
        object.__setattr__(p, "_img", tuple(raw))
        return p

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        if k < 1:
            raise PermutationError("a permutation needs at least one letter")
        return cls.from_raw(range(k))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], k: int) -> "Permutation":
        img = list(range(k))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= k:
                    raise PermutationError(f"letter {x} exceeds size {k}")
                if x in seen:
                    raise PermutationError(f"repeated letter {x} in cycles")
                seen.add(x)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                img[a - 1] = b - 1
        return cls.from_raw(img)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def raw(self) -> Raw:
        return self._img

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self._img)

    @property
    def size(self) -> int:
        return len(self._img)

    def __len__(self) -> int:
        return len(self._img)

    def __call__(self, t: int) -> int:
        return self._img[t - 1] + 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __le__(self, other: "Permutation") -> bool:
        return self._img <= other._img

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __str__(self) -> str:
        return format_perm(self, "oneline")

    def __reduce__(self):
        return (Permutation, (self.images,))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def inverse(self) -> "Permutation":
        return inverse(self)

    def parity(self) -> int:
        return parity(self)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest letter."""
        seen = [False] * len(self._img)
        out = []
        for start in range(len(self._img)):
            if seen[start] or self._img[start] == start:
                continue
            cyc = []
            t = start
            while not seen[t]:
                seen[t] = True
                cyc.append(t + 1)
                t = self._img[t]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def extend(self, k: int) -> "Permutation":
        """Embed into S_k by fixing the new trailing letters."""
        if k < self.size:
            raise PermutationError(f"cannot shrink size {self.size} to {k}")
        return Permutation.from_raw(self._img + tuple(range(self.size, k)))

    def monomial(self) -> str:
        return "".join(f"x{x + 1}" for x in self._img)


def _check_same_size(a: Permutation, b: Permutation) -> None:
    if a.size != b.size:
        raise PermutationError(f"size mismatch: {a.size} vs {b.size}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``(a*b)(t) = a(b(t))``."""
    _check_same_size(a, b)
    return Permutation.from_raw(raw_compose(a.raw, b.raw))


def inverse(a: Permutation) -> Permutation:
    return Permutation.from_raw(raw_inverse(a.raw))


def parity(a: Permutation) -> int:
    """+1 for even permutations, -1 for odd ones."""
    swaps = sum(len(c) - 1 for c in a.cycles())
    return -1 if swaps % 2 else 1


def hat_cycle(i: int, k: int) -> Permutation:
    """The cycle (i, i+1, ..., k) in S_k; the identity when ``i == k``."""
    if not 1 <= i <= k:
        raise PermutationError(f"hat_cycle index {i} outside 1..{k}")
    return Permutation.from_raw(raw_hat_cycle(i, k))


def long_element(n: int) -> Permutation:
    """The reversal t -> n+1-t."""
    return Permutation.from_raw(range(n - 1, -1, -1))


def full_cycle(n: int) -> Permutation:
    """The n-cycle (1 2 ... n)."""
    return Permutation.from_cycles([range(1, n + 1)], n)


def transposition(a: int, b: int, k: int) -> Permutation:
    return Permutation.from_cycles([(a, b)], k)


def in_S_nab(t: Permutation, a: int, b: int) -> bool:
    """Membership in the subgroup generated by all permutations of the first
    ``a`` letters and all permutations of the last ``b`` letters."""
    k = t.size
    if not (0 <= a <= k and 0 <= b <= k):
        raise PermutationError(f"block sizes ({a}, {b}) invalid for size {k}")
    if a + b > k:
        return True
    img = t.raw
    for x in range(a):
        if img[x] >= a:
            return False
    for x in range(a, k - b):
        if img[x] != x:
            return False
    return True


@dataclass(frozen=True)
class BlockDecomposition:
    """``sigma`` fixes 1..i and j+1..n pointwise; ``core`` is the relabeled middle."""

    i: int
    j: int
    core: Permutation | None

    @property
    def is_empty(self) -> bool:
        return self.core is None


def block_decompose(sigma: Permutation) -> BlockDecomposition:
    img = sigma.raw
    n = len(img)
    if all(x == t for t, x in enumerate(img)):
        return BlockDecomposition(0, 0, None)
    i = 0
    while img[i] == i:
        i += 1
    j = n
    while img[j - 1] == j - 1:
        j -= 1
    core = Permutation.from_raw(x - i for x in img[i:j])
    return BlockDecomposition(i, j, core)


# --- text formats ---------------------------------------------------------------

_ONELINE = re.compile(r"^\s*\[(.*)\]\s*$", re.S)
_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, k: int | None = None) -> Permutation:
    """Parse ``"[3,2,1]"`` (one-line) or ``"(1 3)(2 5)"`` (cycles, needs ``k``)."""
    text = text.strip()
    m = _ONELINE.match(text)
    if m:
        body = m.group(1).strip()
        items = [s for s in re.split(r"[\s,]+", body) if s] if body else []
        try:
            values = [int(s) for s in items]
        except ValueError:
            raise PermutationError(f"non-integer entry in one-line form {text!r}") from None
        if k is not None and len(values) != k:
            raise PermutationError(f"one-line form has {len(values)} entries, expected {k}")
        return Permutation(values)

    if text.startswith("("):
        if k is None:
            raise PermutationError("cycle notation requires an explicit size")
        if k < 1:
            raise PermutationError("a permutation needs at least one letter")
        pos = 0
        cycles = []
        for cm in _CYCLE.finditer(text):
            gap = text[pos:cm.start()]
            if gap.strip():
                raise PermutationError(f"unexpected {gap.strip()!r} at position {pos + 1}")
            pos = cm.end()
            body = cm.group(1)
            items = [s for s in re.split(r"[\s,]+", body.strip()) if s]
            try:
                cycles.append([int(s) for s in items])
            except ValueError:
                raise PermutationError(
                    f"non-integer entry in cycle at position {cm.start() + 1}"
                ) from None
        if text[pos:].strip():
            raise PermutationError(f"unexpected {text[pos:].strip()!r} at position {pos + 1}")
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= k:
                    raise PermutationError(f"letter {x} exceeds size {k}")
                if x in seen:
                    raise PermutationError(f"repeated letter {x} in cycles")
                seen.add(x)
        return Permutation.from_cycles(cycles, k)

    raise PermutationError(f"cannot parse permutation {text!r}")


def format_perm(p: Permutation, style: str = "oneline") -> str:
    if style == "oneline":
        return "[" + ",".join(str(x) for x in p.images) + "]"
    if style == "cycles":
        cycles = p.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)
    raise ValueError(f"unknown permutation style {style!r}")


def parse_rational(text: str) -> Fraction:
    """Accept integer literals and ``p/q``."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None
    return value


@dataclass(frozen=True)
class TwoTermIdentity:
    """The identity ``x_1 ... x_n = q * x_{sigma(1)} ... x_{sigma(n)}``."""

    sigma: Permutation
    q: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q == 0:
            raise ValueError("q must be nonzero")

    @property
    def n(self) -> int:
        return self.sigma.size

    def __str__(self) -> str:
        lhs = Permutation.identity(self.n).monomial()
        coeff = "" if self.q == 1 else f"({self.q})"
        return f"{lhs} = {coeff}{self.sigma.monomial()}"
