"""Degree-by-degree saturation of a two-term identity.

Starting from ``H_n = <sigma>``, each ``H_{k+1}`` is generated by the lifts
``T_i(g)`` of every element ``g`` of ``H_k`` (``0 <= i <= k+1``), optionally
seeded with the prefix/suffix commutation identities that follow from a
single identity moving both endpoints. For ``q != 1`` every element carries
the scalar ``c`` of the relation ``x_id = c * x_g``; a pure scalar relation
``x_id = c * x_id`` with ``c != 1`` means the algebra is nilpotent in that
degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .groups import (
    DEFAULT_ENUMERATION_CAP,
    KernelFound,
    StabilizerChain,
    SubgroupRep,
)
from .perm import (
    BlockDecomposition,
    Permutation,
    PermutationError,
    Raw,
    TwoTermIdentity,
    block_decompose,
    full_cycle,
    long_element,
    raw_compose,
    raw_hat_cycle,
    raw_inverse,
)

FLAGS = (
    "long_element",
    "transposition_1n",
    "full_cycle",
    "sharpness_family",
    "vacuous",
    "fixes_endpoint",
)


# --- lifting --------------------------------------------------------------------

@lru_cache(maxsize=None)
def _hat(i: int, k: int) -> Raw:
    return raw_hat_cycle(i, k)


@lru_cache(maxsize=None)
def _hat_inv(i: int, k: int) -> Raw:
    return raw_inverse(raw_hat_cycle(i, k))


def raw_lift(s: Raw, i: int) -> Raw:
    m = len(s)
    if i == 0:
        return (0,) + tuple([x + 1 for x in s])
    if i == m + 1:
        return s + (m,)
    j = s.index(i - 1) + 1  # sigma^{-1}(i), 1-based
    extended = s + (m,)
    return raw_compose(_hat(i + 1, m + 1), raw_compose(extended, _hat_inv(j + 1, m + 1)))


def lift_Ti(sigma: Permutation, i: int) -> Permutation:
    """The permutation ``tau`` with ``T_i(f_sigma) = f_tau``.

    For ``1 <= i <= m`` this is ``hat(i+1) * sigma * hat(sigma^-1(i)+1)^-1`` with
    ``sigma`` fixing ``m+1``; ``i = 0`` multiplies by a new variable on the
    left and ``i = m+1`` on the right.
    """
    m = sigma.size
    if not 0 <= i <= m + 1:
        raise PermutationError(f"lift index {i} outside 0..{m + 1}")
    return Permutation.from_raw(raw_lift(sigma.raw, i))


# --- seeds ----------------------------------------------------------------------

@dataclass(frozen=True)
class ScaledPerm:
    """The relation ``x_id = weight * x_perm``."""

    perm: Permutation
    weight: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        if self.weight == 0:
            raise ValueError("weight must be nonzero")


def latyshev_seed(identity: TwoTermIdentity) -> dict[int, list[ScaledPerm]]:
    """Prefix/suffix identities in degrees n+1 and n+2.

    With ``x_sigma = x_i u = v x_j`` and ``i != 1``, ``j != n``: the cycles
    (1 2 ... i) and (j+1 ... n+1) in degree n+1, the transpositions (1 2) and
    (n+1 n+2) in degree n+2, all with weight 1 whatever q is. Empty when the
    precondition fails.
    """
    sigma = identity.sigma
    n = identity.n
    i, j = sigma(1), sigma(n)
    if n < 2 or i == 1 or j == n:
        return {}
    k1, k2 = n + 1, n + 2
    return {
        k1: [
            ScaledPerm(Permutation.from_cycles([range(1, i + 1)], k1)),
            ScaledPerm(Permutation.from_cycles([range(j + 1, n + 2)], k1)),
        ],
        k2: [
            ScaledPerm(Permutation.from_cycles([(1, 2)], k2)),
            ScaledPerm(Permutation.from_cycles([(n + 1, n + 2)], k2)),
        ],
    }


# --- classification -------------------------------------------------------------

def classify(identity: TwoTermIdentity | Permutation) -> frozenset[str]:
    sigma = identity.sigma if isinstance(identity, TwoTermIdentity) else identity
    n = sigma.size
    flags = set()
    if sigma.is_identity():
        flags.add("vacuous")
    if n >= 2:
        if sigma == long_element(n):
            flags.add("long_element")
        if sigma == Permutation.from_cycles([(1, n)], n):
            flags.add("transposition_1n")
        cyc = full_cycle(n)
        if sigma == cyc or sigma == cyc.inverse():
            flags.add("full_cycle")
    if n >= 4 and sigma == Permutation.from_cycles([(1, 2), (n - 1, n)], n):
        flags.add("sharpness_family")
    if sigma(1) == 1 or sigma(n) == n:
        flags.add("fixes_endpoint")
    return frozenset(flags)


def predicted_ec_degree(identity: TwoTermIdentity) -> Optional[int]:
    """Degree of eventual commutativity known in closed form for the named
    families (n >= 3, q = 1); None when no closed form applies.

    Raises if two families predict different values.
    """
    if identity.q != 1 or identity.n < 3:
        return None
    n = identity.n
    flags = classify(identity)
    preds = set()
    if "long_element" in flags:
        preds.add(n + 2 if n % 4 == 1 else n + 1)
    if "transposition_1n" in flags or "full_cycle" in flags:
        preds.add(n + 1)
    if "sharpness_family" in flags:
        preds.add(2 * n - 3)
    if len(preds) > 1:
        raise AssertionError(f"conflicting closed forms {sorted(preds)} for {identity}")
    return preds.pop() if preds else None


def guaranteed_degree(n: int) -> int:
    """Upper bound on the degree of eventual commutativity when sigma moves
    both endpoints: n+1 for n in {3, 4}, 2n-3 from n = 5 on."""
    if n <= 2:
        return n
    if n <= 4:
        return n + 1
    return 2 * n - 3


def default_max_degree(n: int) -> int:
    return max(2 * n - 3, n + 2) + 1


# --- saturation -----------------------------------------------------------------

@dataclass(frozen=True)
class DegreeRecord:
    k: int
    order: int
    is_full: bool
    contains_alternating: bool
    generators: tuple[Permutation, ...] = ()
    prefix_block: int = 1
    suffix_block: int = 1
    vanishes: bool = False


@dataclass
class SaturationReport:
    identity: TwoTermIdentity
    chain: list[DegreeRecord] = field(default_factory=list)
    ec_degree: Optional[int] = None
    nilpotency_degree: Optional[int] = None
    kernel_weight: Optional[Fraction] = None
    classification: frozenset[str] = frozenset()
    bound_2n_minus_3_respected: Optional[bool] = None
    stable_after_full: Optional[bool] = None
    max_degree: int = 0
    lifts_tested: int = 0
    notes: list[str] = field(default_factory=list)
    groups: dict[int, SubgroupRep] = field(default_factory=dict, repr=False, compare=False)

    def group(self, k: int) -> SubgroupRep:
        return self.groups[k]

    def record(self, k: int) -> DegreeRecord:
        for rec in self.chain:
            if rec.k == k:
                return rec
        raise KeyError(k)


class SaturationCapError(RuntimeError):
    """A group in the chain exceeded the enumeration cap."""

    def __init__(self, message: str, partial: SaturationReport):
        super().__init__(message)
        self.partial = partial


def _block_profile(chain: StabilizerChain) -> tuple[int, int]:
    """Largest a, b with all permutations of the first a / last b letters present."""
    k = chain.k
    a = 1
    while a < k:
        img = list(range(k))
        img[a - 1], img[a] = a, a - 1
        if not chain.contains_raw(tuple(img)):
            break
        a += 1
    b = 1
    while b < k:
        img = list(range(k))
        img[k - b], img[k - b - 1] = k - b - 1, k - b
        if not chain.contains_raw(tuple(img)):
            break
        b += 1
    return a, b


def _border_order(dec: BlockDecomposition, n: int, k: int) -> int:
    """Order of the group of degree-k permutations fixing the same borders as sigma."""
    if dec.is_empty:
        return 1
    return math.factorial(k - dec.i - (n - dec.j))


def _record(k: int, chain: StabilizerChain, gens: list[Permutation]) -> DegreeRecord:
    rep = SubgroupRep.from_chain(chain, gens)
    a, b = _block_profile(chain)
    return DegreeRecord(
        k=k,
        order=rep.order(),
        is_full=rep.is_full(),
        contains_alternating=rep.contains_alternating(),
        generators=tuple(gens),
        prefix_block=a,
        suffix_block=b,
    )


def _vanishing_record(k: int) -> DegreeRecord:
    # x_1...x_k = 0, so every x_id = x_tau holds trivially.
    return DegreeRecord(k, math.factorial(k), True, True, (), k, k, vanishes=True)


def saturate(
    identity: TwoTermIdentity,
    max_degree: Optional[int] = None,
    *,
    seed_latyshev: bool = True,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    force_weighted: bool = False,
    check_stability: bool = True,
    stop_at_success: bool = True,
) -> SaturationReport:
    """Compute ``H_n, H_{n+1}, ...`` until eventual commutativity (q = 1),
    nilpotency (q != 1), or ``max_degree``.

    ``force_weighted`` runs the scalar-carrying path even for q = 1, which
    must then reproduce the unweighted chain exactly. With
    ``stop_at_success=False`` a q = 1 run keeps going up to ``max_degree``.
    """
    n = identity.n
    q = identity.q
    if max_degree is None:
        max_degree = default_max_degree(n)
    if max_degree < n:
        raise ValueError(f"max_degree {max_degree} below identity degree {n}")
    weighted = force_weighted or q != 1
    flags = classify(identity)
    dec = block_decompose(identity.sigma)
    report = SaturationReport(identity, classification=flags, max_degree=max_degree)
    if "fixes_endpoint" in flags and q == 1:
        report.notes.append(
            "sigma fixes an endpoint: H_k keeps those borders and never reaches S_k; "
            "see the bordered analysis"
        )
    seeds = latyshev_seed(identity) if seed_latyshev else {}

    chain = StabilizerChain(n, weighted)
    try:
        grew = chain.add(identity.sigma.raw, q)
    except KernelFound as exc:
        return _finish_nilpotent(report, n, exc.weight)
    gens = [identity.sigma] if grew else []
    report.chain.append(_record(n, chain, gens))
    report.groups[n] = SubgroupRep.from_chain(chain, gens, enumeration_cap)
    if _success(report, q) and stop_at_success:
        return _finish(report, chain, weighted, check_stability)

    k = n
    while k < max_degree:
        order = chain.order()
        if order > enumeration_cap:
            raise SaturationCapError(
                f"H_{k} has order {order}, above enumeration cap {enumeration_cap}", report
            )
        k1 = k + 1
        nxt = StabilizerChain(k1, weighted)
        bound = _border_order(dec, n, k1)
        new_gens: list[Permutation] = []
        try:
            # Border lifts are injective homomorphisms: lifting a strong
            # generating set first reaches their full image at once.
            for g, w, _ in list(chain.strong):
                for i in (0, k1):
                    lifted = raw_lift(g, i)
                    if nxt.add(lifted, w):
                        new_gens.append(Permutation.from_raw(lifted))
            for sp in seeds.get(k1, ()):
                if nxt.add(sp.perm.raw, sp.weight):
                    new_gens.append(sp.perm)
            done = not weighted and nxt.order() >= bound
            for g, w in chain.iter_elements():
                if done:
                    break
                for i in range(k1 + 1):
                    lifted = raw_lift(g, i)
                    report.lifts_tested += 1
                    if nxt.add(lifted, w):
                        new_gens.append(Permutation.from_raw(lifted))
                        if not weighted and nxt.order() >= bound:
                            done = True
                            break
        except KernelFound as exc:
            return _finish_nilpotent(report, k1, exc.weight)
        chain = nxt
        k = k1
        report.chain.append(_record(k, chain, new_gens))
        report.groups[k] = SubgroupRep.from_chain(chain, new_gens, enumeration_cap)
        if _success(report, q) and stop_at_success:
            break
    return _finish(report, chain, weighted, check_stability)


def _success(report: SaturationReport, q: Fraction) -> bool:
    """Record the first full degree; True once it is known."""
    rec = report.chain[-1]
    if q == 1 and rec.is_full and report.ec_degree is None:
        report.ec_degree = rec.k
        return True
    return False


def _finish_nilpotent(report: SaturationReport, k: int, weight) -> SaturationReport:
    report.chain.append(_vanishing_record(k))
    report.nilpotency_degree = k
    report.kernel_weight = Fraction(weight)
    return report


def _finish(report: SaturationReport, chain: StabilizerChain, weighted: bool,
            check_stability: bool) -> SaturationReport:
    ident = report.identity
    if ident.q == 1 and "fixes_endpoint" not in report.classification:
        ec = report.ec_degree
        report.bound_2n_minus_3_respected = ec is not None and ec <= guaranteed_degree(ident.n)
    if report.ec_degree is not None and check_stability:
        full = report.group(report.ec_degree)._chain
        report.stable_after_full = _stable_next(full, weighted) and all(
            rec.is_full for rec in report.chain if rec.k >= report.ec_degree
        )
    return report


def _stable_next(chain: StabilizerChain, weighted: bool) -> bool:
    """Whether the border lifts of a full H_k already give all of S_{k+1}.

    T_0 and T_{k+1} are injective homomorphisms, so lifting a strong
    generating set suffices for a lower bound; S_{k+1} is the upper bound.
    """
    k = chain.k
    nxt = StabilizerChain(k + 1)
    for g, _, _ in chain.strong:
        nxt.add(raw_lift(g, 0))
        nxt.add(raw_lift(g, k + 1))
    return nxt.order() == math.factorial(k + 1)


# --- bordered analysis ----------------------------------------------------------

@dataclass
class GeneralReport:
    """Analysis of an identity whose permutation may fix its borders."""

    identity: TwoTermIdentity
    decomposition: BlockDecomposition
    core_report: Optional[SaturationReport] = None
    core_degree: Optional[int] = None
    bordered_degree: Optional[int] = None
    stated_bound: Optional[int] = None
    oracle_confirmed: Optional[bool] = None
    oracle_note: str = ""

    @property
    def vacuous(self) -> bool:
        return self.decomposition.is_empty


def border_subgroup_contains(t: Permutation, i: int, tail: int) -> bool:
    """Whether ``t`` fixes the first ``i`` and the last ``tail`` letters."""
    k = t.size
    img = t.raw
    return all(img[x] == x for x in range(i)) and all(img[x] == x for x in range(k - tail, k))


def analyze_general(
    identity: TwoTermIdentity,
    max_degree: Optional[int] = None,
    *,
    oracle_max_k: int = 0,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> GeneralReport:
    """Saturate the core block and translate its answer back to the borders.

    If the core identity becomes commutative (q = 1) or vanishes (q != 1) in
    degree d, the original identity makes every rearrangement of the middle
    letters (respectively every monomial) agree in total degree
    ``d + i + (n - j)``. When that degree is at most ``oracle_max_k`` the
    claim is checked directly on the consequence graph.
    """
    dec = block_decompose(identity.sigma)
    rep = GeneralReport(identity, dec)
    if dec.is_empty:
        rep.oracle_note = "vacuous identity"
        return rep
    width = dec.j - dec.i
    tail = identity.n - dec.j
    core = TwoTermIdentity(dec.core, identity.q)
    core_max = max_degree - dec.i - tail if max_degree is not None else None
    if core_max is not None and core_max < width:
        core_max = None
    rep.core_report = saturate(core, core_max, enumeration_cap=enumeration_cap)
    rep.stated_bound = 2 * width + 1
    d = rep.core_report.ec_degree if identity.q == 1 else rep.core_report.nilpotency_degree
    rep.core_degree = d
    if d is None:
        rep.oracle_note = "core did not resolve within the degree limit"
        return rep
    total = d + dec.i + tail
    rep.bordered_degree = total
    if total > oracle_max_k:
        rep.oracle_note = f"degree {total} above oracle limit {oracle_max_k}"
        return rep
    from .oracle import build_graph, identity_group_raw

    graph = build_graph(identity, total)
    if identity.q == 1:
        found = identity_group_raw(graph)
        expect = [
            p for p in _perms(total)
            if border_subgroup_contains(Permutation.from_raw(p), dec.i, tail)
        ]
        rep.oracle_confirmed = all(p in found for p in expect)
    else:
        rep.oracle_confirmed = graph.is_dead(tuple(range(total)))
    return rep


def _perms(k: int):
    from itertools import permutations

    return permutations(range(k))
