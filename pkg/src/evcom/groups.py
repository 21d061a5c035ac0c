"""Finitely generated permutation groups via a stabilizer chain.

The chain always uses the full base 1, 2, ..., k (level ``j`` is the pointwise
stabilizer of the first ``j`` letters), which makes lexicographic enumeration
a plain depth-first walk over the transversals.

Elements may optionally carry a multiplicative scalar weight. A weighted
group lives in ``S_k x F^*``; its scalar-only part (the kernel of the
projection to ``S_k``) is detected when a Schreier generator sifts to the
identity permutation with a weight other than 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .perm import (
    Permutation,
    PermutationError,
    Raw,
    raw_compose,
    raw_identity,
    raw_inverse,
)

DEFAULT_ENUMERATION_CAP = 5_000_000


class EnumerationCapError(RuntimeError):
    """A group is too large to enumerate under the configured cap."""

    def __init__(self, order: int, cap: int):
        super().__init__(f"group of order {order} exceeds enumeration cap {cap}")
        self.order = order
        self.cap = cap


class KernelFound(Exception):
    """Raised by a weighted chain when ``(id, c)`` with ``c != 1`` is generated."""

    def __init__(self, weight):
        super().__init__(f"scalar relation x = {weight} x with {weight} != 1")
        self.weight = weight


class StabilizerChain:
    """Mutable Schreier-Sims structure with full base; used while building.

    ``levels[j]`` maps each point of the orbit of ``j`` under the level-``j``
    stabilizer to ``(u, u_inverse, weight)`` with ``u(j) == point``.
    """

    def __init__(self, k: int, weighted: bool = False):
        if k < 1:
            raise PermutationError("degree must be positive")
        self.k = k
        self.weighted = weighted
        ident = raw_identity(k)
        self._id = ident
        self._one = Fraction(1) if weighted else 1
        self.strong: list[tuple[Raw, object, int]] = []  # (g, weight, first moved)
        self.levels: list[dict[int, tuple[Raw, Raw, object]]] = [
            {j: (ident, ident, self._one)} for j in range(k)
        ]

    # -- queries -----------------------------------------------------------

    def sift(self, g: Raw, w=1, start: int = 0) -> tuple[Raw, object, int]:
        """Strip ``g`` through levels ``start..``; returns (residue, weight, level).

        ``level == k`` means the residue is the identity.
        """
        weighted = self.weighted
        levels = self.levels
        for j in range(start, self.k):
            x = g[j]
            if x == j:
                continue
            entry = levels[j].get(x)
            if entry is None:
                return g, w, j
            uinv = entry[1]
            g = tuple([uinv[y] for y in g])
            if weighted:
                w = w / entry[2]
        return g, w, self.k

    def contains_raw(self, g: Raw) -> bool:
        return self.sift(g)[2] == self.k

    def weight_of(self, g: Raw):
        """The scalar ``c`` with ``(g, c)`` in the group, or None if ``g`` is absent."""
        residue, w, level = self.sift(g, self._one)
        if level != self.k:
            return None
        return 1 / w if self.weighted else 1

    def order(self) -> int:
        return math.prod(len(lv) for lv in self.levels)

    # -- construction ------------------------------------------------------

    def add(self, g: Raw, w=1) -> bool:
        """Add ``(g, w)``; True if the permutation group grew.

        A weighted chain raises :class:`KernelFound` when the addition forces a
        nontrivial scalar relation.
        """
        if len(g) != self.k:
            raise PermutationError(f"size mismatch: {len(g)} vs {self.k}")
        w = Fraction(w) if self.weighted else 1
        residue, rw, level = self.sift(g, w)
        if level == self.k:
            if self.weighted and rw != 1:
                raise KernelFound(rw)
            return False
        self._insert(residue, rw, level)
        self._complete(level)
        return True

    def _insert(self, g: Raw, w, level: int) -> None:
        self.strong.append((g, w, level))

    def _gens_at(self, j: int):
        return [(g, w) for g, w, fm in self.strong if fm >= j]

    def _orbit(self, j: int) -> None:
        gens = self._gens_at(j)
        ident = self._id
        table = {j: (ident, ident, self._one)}
        queue = [j]
        weighted = self.weighted
        for x in queue:
            u, _, uw = table[x]
            for s, sw in gens:
                y = s[x]
                if y not in table:
                    v = raw_compose(s, u)
                    table[y] = (v, raw_inverse(v), uw * sw if weighted else 1)
                    queue.append(y)
        self.levels[j] = table

    def _complete(self, level: int) -> None:
        i = level
        weighted = self.weighted
        while i >= 0:
            self._orbit(i)
            table = self.levels[i]
            gens = self._gens_at(i)
            restart = None
            for x in sorted(table):
                u, _, uw = table[x]
                for s, sw in gens:
                    su = raw_compose(s, u)
                    target = table[su[i]]
                    h = tuple([target[1][y] for y in su])
                    hw = uw * sw / target[2] if weighted else 1
                    residue, rw, lv = self.sift(h, hw, i + 1)
                    if lv == self.k:
                        if weighted and rw != 1:
                            raise KernelFound(rw)
                        continue
                    self._insert(residue, rw, lv)
                    restart = lv
                    break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart

    # -- enumeration -------------------------------------------------------

    def iter_elements(self) -> Iterator[tuple[Raw, object]]:
        """All ``(element, weight)`` pairs in lexicographic order of one-line form."""
        k = self.k
        levels = [(j, lv) for j, lv in enumerate(self.levels) if len(lv) > 1]
        weighted = self.weighted
        depth = len(levels)

        def walk(d: int, p: Raw, w):
            if d == depth:
                yield p, w
                return
            j, table = levels[d]
            cands = sorted(table, key=lambda c: p[c])
            for c in cands:
                u, _, uw = table[c]
                yield from walk(d + 1, tuple([p[y] for y in u]), w * uw if weighted else 1)

        yield from walk(0, raw_identity(k), self._one)


@dataclass(frozen=True)
class SubgroupRep:
    """An immutable finitely generated subgroup of S_k."""

    k: int
    generators: tuple[Permutation, ...]
    _chain: StabilizerChain = field(repr=False, compare=False)
    enumeration_cap: int = field(default=DEFAULT_ENUMERATION_CAP, compare=False)

    @classmethod
    def from_chain(cls, chain: StabilizerChain, generators: Iterable[Permutation],
                   enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> "SubgroupRep":
        return cls(chain.k, tuple(generators), chain, enumeration_cap)

    def contains(self, t: Permutation) -> bool:
        if t.size != self.k:
            raise PermutationError(f"size mismatch: {t.size} vs {self.k}")
        return self._chain.contains_raw(t.raw)

    def __contains__(self, t: Permutation) -> bool:
        return self.contains(t)

    def weight_of(self, t: Permutation):
        """Scalar ``c`` with ``x_id = c * x_t`` for a weighted group (1 if unweighted)."""
        if t.size != self.k:
            raise PermutationError(f"size mismatch: {t.size} vs {self.k}")
        return self._chain.weight_of(t.raw)

    @property
    def weighted(self) -> bool:
        return self._chain.weighted

    def order(self) -> int:
        return self._chain.order()

    def is_full(self) -> bool:
        return self.order() == math.factorial(self.k)

    def contains_alternating(self) -> bool:
        # A_k is generated by the 3-cycles (1 2 t), t = 3..k.
        if self.order() * 2 < math.factorial(self.k):
            return False
        k = self.k
        for t in range(2, k):
            img = list(range(k))
            img[0], img[1], img[t] = 1, t, 0
            if not self._chain.contains_raw(tuple(img)):
                return False
        return True

    def enumerate(self) -> Iterator[Permutation]:
        """Every element once, in lexicographic order of one-line form."""
        order = self.order()
        if order > self.enumeration_cap:
            raise EnumerationCapError(order, self.enumeration_cap)
        for g, _ in self._chain.iter_elements():
            yield Permutation.from_raw(g)

    def enumerate_scaled(self) -> Iterator[tuple[Permutation, object]]:
        order = self.order()
        if order > self.enumeration_cap:
            raise EnumerationCapError(order, self.enumeration_cap)
        for g, w in self._chain.iter_elements():
            yield Permutation.from_raw(g), w

    def elements(self) -> set[Permutation]:
        return set(self.enumerate())


def generate(k: int, gens: Iterable[Permutation],
             enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> SubgroupRep:
    """The subgroup of S_k generated by ``gens``."""
    gens = tuple(gens)
    chain = StabilizerChain(k)
    for g in gens:
        if g.size != k:
            raise PermutationError(f"generator of size {g.size} in S_{k}")
        chain.add(g.raw)
    return SubgroupRep.from_chain(chain, gens, enumeration_cap)


def order(rep: SubgroupRep) -> int:
    return rep.order()


def contains(rep: SubgroupRep, t: Permutation) -> bool:
    return rep.contains(t)


def enumerate_group(rep: SubgroupRep) -> Iterator[Permutation]:
    return rep.enumerate()


def is_full(rep: SubgroupRep) -> bool:
    return rep.is_full()


def contains_alternating(rep: SubgroupRep) -> bool:
    return rep.contains_alternating()
