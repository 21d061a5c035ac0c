"""Brute-force consequence graph of a two-term identity in a fixed degree.

Every multilinear consequence of ``x_1...x_n - q x_sigma`` in degree k is a
combination of ``u_0 f(u_1, ..., u_n) u_{n+1}`` with monomial blocks,
``u_1..u_n`` nonempty and ``u_0``, ``u_{n+1}`` possibly empty. Each such
generator has exactly two monomial terms, so the span is captured by a
disjoint-set forest over the k! monomials whose edges carry the scalar ratio.
A cycle of ratios whose product is not 1 forces every monomial of that
component to vanish.

Ratios are always powers of q and are stored as exponents, reduced modulo
the multiplicative order of q when that order is finite.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional, Union

from .perm import Permutation, PermutationError, Raw, TwoTermIdentity

DEFAULT_MAX_K = 8


class OracleCapError(RuntimeError):
    def __init__(self, k: int, cap: int):
        super().__init__(
            f"degree {k} needs {math.factorial(k)} nodes; oracle cap is k <= {cap}"
        )
        self.k = k
        self.cap = cap


class Verdict(enum.Enum):
    ZERO = "ZERO"
    ABSENT = "ABSENT"


ZERO = Verdict.ZERO
ABSENT = Verdict.ABSENT


def multiplicative_order(q: Fraction, prime: Optional[int] = None) -> Optional[int]:
    """Smallest r > 0 with q**r == 1, or None when q has infinite order."""
    if prime is None:
        if q == 1:
            return 1
        if q == -1:
            return 2
        return None
    residue = q.numerator * pow(q.denominator, -1, prime) % prime
    if residue == 0:
        raise ValueError(f"q vanishes modulo {prime}")
    r, x = 1, residue
    while x != 1:
        x = x * residue % prime
        r += 1
    return r


def block_moves(sigma: Raw, k: int) -> list[Raw]:
    """Place permutations taking u_0 u_1..u_n u_{n+1} to u_0 u_sigma(1)..u_sigma(n) u_{n+1}.

    One per split of k positions into blocks (first and last may be empty),
    deduplicated and sorted.
    """
    n = len(sigma)
    moves = set()
    # u_1..u_n cover positions start..end-1, cut at n-1 interior points.
    for start in range(0, k - n + 1):
        for end in range(start + n, k + 1):
            for cuts in combinations(range(start + 1, end), n - 1):
                bounds = (start,) + cuts + (end,)
                blocks = [tuple(range(bounds[t], bounds[t + 1])) for t in range(n)]
                word = list(range(start))
                for t in range(n):
                    word.extend(blocks[sigma[t]])
                word.extend(range(end, k))
                moves.add(tuple(word))
    return sorted(moves)


class EquivalenceGraph:
    """Weighted disjoint-set forest over all monomials of degree k."""

    def __init__(self, identity: TwoTermIdentity, k: int, *, prime: Optional[int] = None,
                 max_k: int = DEFAULT_MAX_K):
        n = identity.n
        if k < n:
            raise ValueError(f"degree {k} below identity degree {n}")
        if k > max_k:
            raise OracleCapError(k, max_k)
        self.identity = identity
        self.k = k
        self.prime = prime
        self.period = multiplicative_order(identity.q, prime)
        self.nodes: list[Raw] = list(permutations(range(k)))
        self.index = {w: t for t, w in enumerate(self.nodes)}
        size = len(self.nodes)
        self.parent = list(range(size))
        self.expo = [0] * size  # x_v = q**expo[v] * x_parent[v]
        self.rank = [0] * size
        self.dead = [False] * size
        self.edges_inserted = 0
        self._build()

    # -- construction ------------------------------------------------------

    def _reduce(self, e: int) -> int:
        return e % self.period if self.period else e

    def _find(self, v: int) -> tuple[int, int]:
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        # Compress: accumulate exponents from the top of the path down.
        acc = 0
        for u in reversed(path):
            acc = self._reduce(acc + self.expo[u])
            self.expo[u] = acc
            self.parent[u] = root
        return root, (self.expo[path[0]] if path else 0)

    def _union(self, a: int, b: int, e: int) -> None:
        """Record ``x_a = q**e * x_b``."""
        ra, ea = self._find(a)
        rb, eb = self._find(b)
        if ra == rb:
            if self._reduce(ea - e - eb) != 0:
                self.dead[ra] = True
            return
        # x_ra = q**d * x_rb
        d = self._reduce(e + eb - ea)
        if self.rank[ra] > self.rank[rb]:
            ra, rb, d = rb, ra, self._reduce(-d)
        self.parent[ra] = rb
        self.expo[ra] = d
        if self.rank[ra] == self.rank[rb]:
            self.rank[rb] += 1
        self.dead[rb] = self.dead[rb] or self.dead[ra]

    def _build(self) -> None:
        moves = block_moves(self.identity.sigma.raw, self.k)
        index = self.index
        for a, word in enumerate(self.nodes):
            for mv in moves:
                other = tuple([word[p] for p in mv])
                self._union(a, index[other], 1)
                self.edges_inserted += 1

    # -- queries -----------------------------------------------------------

    def _scalar(self, e: int):
        q = self.identity.q
        if self.prime is None:
            return q ** e
        p = self.prime
        residue = q.numerator * pow(q.denominator, -1, p) % p
        return pow(residue, e % (p - 1), p)

    def is_dead(self, a: Raw) -> bool:
        root, _ = self._find(self.index[a])
        return self.dead[root]

    def equivalent_raw(self, a: Raw, b: Raw) -> Union[Fraction, int, Verdict]:
        ra, ea = self._find(self.index[a])
        rb, eb = self._find(self.index[b])
        if ra != rb:
            return ABSENT
        if self.dead[ra]:
            return ZERO
        return self._scalar(ea - eb)

    def potential(self, a: Permutation):
        """Scalar c with ``x_a = c * x_root`` for the current root of a's component."""
        _, e = self._find(self.index[a.raw])
        return self._scalar(e)

    def components(self) -> list[tuple[int, bool]]:
        """(size, dead) per component, sorted by first node."""
        sizes: dict[int, int] = {}
        order: list[int] = []
        for v in range(len(self.nodes)):
            r, _ = self._find(v)
            if r not in sizes:
                sizes[r] = 0
                order.append(r)
            sizes[r] += 1
        return [(sizes[r], self.dead[r]) for r in order]


def build_graph(identity: TwoTermIdentity, k: int, *, prime: Optional[int] = None,
                allow_k9: bool = False) -> EquivalenceGraph:
    return EquivalenceGraph(identity, k, prime=prime,
                            max_k=9 if allow_k9 else DEFAULT_MAX_K)


def equivalent(graph: EquivalenceGraph, a: Permutation, b: Permutation):
    """Scalar c with ``x_a = c x_b``, ``ZERO`` if both vanish, else ``ABSENT``."""
    if a.size != graph.k or b.size != graph.k:
        raise PermutationError(f"monomials must have degree {graph.k}")
    return graph.equivalent_raw(a.raw, b.raw)


def identity_group_raw(graph: EquivalenceGraph) -> set[Raw]:
    ident = tuple(range(graph.k))
    return {w for w in graph.nodes if graph.equivalent_raw(ident, w) == 1}


def identity_group(graph: EquivalenceGraph) -> set[Permutation]:
    """All tau with ``x_id = x_tau`` a consequence."""
    return {Permutation.from_raw(w) for w in identity_group_raw(graph)}


def nilpotent_at(identity: TwoTermIdentity, k: int, **kwargs) -> bool:
    """Whether every monomial of degree k vanishes."""
    graph = build_graph(identity, k, **kwargs)
    return graph.is_dead(tuple(range(k)))

