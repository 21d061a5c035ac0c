"""Analysis documents: the full pipeline for one identity and its serialization."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .groups import DEFAULT_ENUMERATION_CAP
from .oracle import DEFAULT_MAX_K, build_graph, identity_group_raw
from .perm import TwoTermIdentity, format_perm, parse_perm
from .saturation import (
    DegreeRecord,
    GeneralReport,
    SaturationReport,
    analyze_general,
    predicted_ec_degree,
    saturate,
)

SCHEMA_ID = "evcom/1"

_NULLABLE_INT = {"type": ["integer", "null"]}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "evcom analysis document",
    "type": "object",
    "required": [
        "schema", "identity", "chain", "ec_degree", "nilpotency_degree",
        "classification", "oracle", "warnings", "timing_ms",
    ],
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "identity": {
            "type": "object",
            "required": ["n", "sigma_oneline", "sigma_cycles", "q"],
            "properties": {
                "n": {"type": "integer", "minimum": 1},
                "sigma_oneline": {"type": "string", "pattern": r"^\[[0-9,]+\]$"},
                "sigma_cycles": {"type": "string"},
                "q": {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"},
            },
        },
        "chain": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["k", "order", "is_full", "contains_alternating"],
                "properties": {
                    "k": {"type": "integer"},
                    "order": {"type": "integer", "minimum": 1},
                    "is_full": {"type": "boolean"},
                    "contains_alternating": {"type": "boolean"},
                    "generators": {"type": "array", "items": {"type": "string"}},
                    "prefix_block": {"type": "integer"},
                    "suffix_block": {"type": "integer"},
                    "vanishes": {"type": "boolean"},
                },
            },
        },
        "ec_degree": _NULLABLE_INT,
        "nilpotency_degree": _NULLABLE_INT,
        "predicted_ec_degree": _NULLABLE_INT,
        "classification": {"type": "array", "items": {"type": "string"}},
        "oracle": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["k", "agrees"],
                "properties": {
                    "k": {"type": "integer"},
                    "agrees": {"type": ["boolean", "null"]},
                    "reason": {"type": "string"},
                },
            },
        },
        "warnings": {"type": "array", "items": {"type": "string"}},
        "timing_ms": {"type": "number", "minimum": 0},
    },
}


class PredictionMismatch(RuntimeError):
    """A computed degree contradicts the closed form for its family."""


@dataclass(frozen=True)
class OracleCheck:
    k: int
    agrees: Optional[bool]
    reason: str = ""


@dataclass
class AnalysisDocument:
    identity: TwoTermIdentity
    chain: list[DegreeRecord]
    ec_degree: Optional[int]
    nilpotency_degree: Optional[int]
    kernel_weight: Optional[Fraction]
    classification: list[str]
    predicted_ec_degree: Optional[int]
    bound_2n_minus_3_respected: Optional[bool]
    stable_after_full: Optional[bool]
    oracle: list[OracleCheck] = field(default_factory=list)
    general: Optional[dict] = None
    warnings: list[str] = field(default_factory=list)
    timing_ms: float = 0.0
    resources: dict = field(default_factory=dict)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        ident = self.identity
        return {
            "schema": SCHEMA_ID,
            "identity": {
                "n": ident.n,
                "sigma_oneline": format_perm(ident.sigma, "oneline"),
                "sigma_cycles": format_perm(ident.sigma, "cycles"),
                "q": str(ident.q),
            },
            "chain": [
                {
                    "k": r.k,
                    "order": r.order,
                    "is_full": r.is_full,
                    "contains_alternating": r.contains_alternating,
                    "generators": [format_perm(g) for g in r.generators],
                    "prefix_block": r.prefix_block,
                    "suffix_block": r.suffix_block,
                    "vanishes": r.vanishes,
                }
                for r in self.chain
            ],
            "ec_degree": self.ec_degree,
            "nilpotency_degree": self.nilpotency_degree,
            "kernel_weight": None if self.kernel_weight is None else str(self.kernel_weight),
            "classification": list(self.classification),
            "predicted_ec_degree": self.predicted_ec_degree,
            "bound_2n_minus_3_respected": self.bound_2n_minus_3_respected,
            "stable_after_full": self.stable_after_full,
            "oracle": [asdict(o) for o in self.oracle],
            "general": self.general,
            "warnings": list(self.warnings),
            "timing_ms": self.timing_ms,
            "resources": dict(self.resources),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json_dict(cls, d: dict) -> "AnalysisDocument":
        if d.get("schema") != SCHEMA_ID:
            raise ValueError(f"unsupported schema {d.get('schema')!r}")
        ident = d["identity"]
        sigma = parse_perm(ident["sigma_oneline"])
        chain = [
            DegreeRecord(
                k=r["k"],
                order=r["order"],
                is_full=r["is_full"],
                contains_alternating=r["contains_alternating"],
                generators=tuple(parse_perm(g) for g in r.get("generators", [])),
                prefix_block=r.get("prefix_block", 1),
                suffix_block=r.get("suffix_block", 1),
                vanishes=r.get("vanishes", False),
            )
            for r in d["chain"]
        ]
        kw = d.get("kernel_weight")
        return cls(
            identity=TwoTermIdentity(sigma, Fraction(ident["q"])),
            chain=chain,
            ec_degree=d["ec_degree"],
            nilpotency_degree=d["nilpotency_degree"],
            kernel_weight=None if kw is None else Fraction(kw),
            classification=list(d["classification"]),
            predicted_ec_degree=d.get("predicted_ec_degree"),
            bound_2n_minus_3_respected=d.get("bound_2n_minus_3_respected"),
            stable_after_full=d.get("stable_after_full"),
            oracle=[OracleCheck(**o) for o in d["oracle"]],
            general=d.get("general"),
            warnings=list(d["warnings"]),
            timing_ms=d["timing_ms"],
            resources=dict(d.get("resources", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "AnalysisDocument":
        return cls.from_json_dict(json.loads(text))

    # -- text --------------------------------------------------------------

    def to_text(self) -> str:
        ident = self.identity
        lines = [
            f"identity: {ident}",
            f"sigma: {format_perm(ident.sigma)} = {format_perm(ident.sigma, 'cycles')}"
            f"  (n = {ident.n}, q = {ident.q})",
            "classification: " + (", ".join(self.classification) or "none"),
            "chain:",
        ]
        for r in self.chain:
            tags = []
            if r.vanishes:
                tags.append("all monomials vanish")
            elif r.is_full:
                tags.append("full")
            elif r.contains_alternating:
                tags.append("contains alternating")
            extra = f"  [{', '.join(tags)}]" if tags else ""
            lines.append(
                f"  k = {r.k}: |H_{r.k}| = {r.order}, prefix block {r.prefix_block}, "
                f"suffix block {r.suffix_block}{extra}"
            )
        lines.append(f"ec_degree: {_txt(self.ec_degree)}")
        lines.append(f"nilpotency_degree: {_txt(self.nilpotency_degree)}")
        if self.kernel_weight is not None:
            lines.append(f"scalar relation: x_id = {self.kernel_weight} * x_id")
        if self.predicted_ec_degree is not None:
            lines.append(f"predicted ec_degree: {self.predicted_ec_degree}")
        if self.bound_2n_minus_3_respected is not None:
            lines.append(f"general bound respected: {_txt(self.bound_2n_minus_3_respected)}")
        if self.stable_after_full is not None:
            lines.append(f"stays full one degree later: {_txt(self.stable_after_full)}")
        if self.general is not None:
            g = self.general
            if g.get("vacuous"):
                lines.append("bordered analysis: vacuous identity")
            else:
                lines.append(
                    f"bordered analysis: fixed prefix {g['i']}, fixed suffix {g['tail']}, "
                    f"core {g['core']}, core degree {_txt(g['core_degree'])}, "
                    f"bordered degree {_txt(g['bordered_degree'])}, "
                    f"stated bound {_txt(g['stated_bound'])}, "
                    f"oracle {_txt(g['oracle_confirmed'])}"
                )
        for o in self.oracle:
            verdict = {True: "agree", False: "DISAGREE", None: "skipped"}[o.agrees]
            why = f" ({o.reason})" if o.reason else ""
            lines.append(f"oracle k = {o.k}: {verdict}{why}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append(f"timing_ms: {self.timing_ms:.1f}")
        return "\n".join(lines)


def _txt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _general_summary(g: GeneralReport) -> dict:
    dec = g.decomposition
    if dec.is_empty:
        return {"vacuous": True}
    return {
        "vacuous": False,
        "i": dec.i,
        "j": dec.j,
        "tail": g.identity.n - dec.j,
        "core": format_perm(dec.core),
        "core_degree": g.core_degree,
        "bordered_degree": g.bordered_degree,
        "stated_bound": g.stated_bound,
        "oracle_confirmed": g.oracle_confirmed,
        "note": g.oracle_note,
    }


def oracle_checks(report: SaturationReport, oracle_max_k: int,
                  enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[list[OracleCheck], int]:
    """Compare each degree of the chain with the brute-force consequence graph."""
    ident = report.identity
    checks = []
    edges = 0
    limit = min(oracle_max_k, DEFAULT_MAX_K)
    for rec in report.chain:
        k = rec.k
        if k > limit:
            checks.append(OracleCheck(k, None, f"k above oracle limit {limit}"))
            continue
        if rec.order > enumeration_cap:
            checks.append(OracleCheck(k, None, "group above enumeration cap"))
            continue
        graph = build_graph(ident, k)
        edges += graph.edges_inserted
        ident_raw = tuple(range(k))
        if rec.vanishes:
            checks.append(OracleCheck(k, graph.is_dead(ident_raw)))
            continue
        if graph.is_dead(ident_raw):
            checks.append(OracleCheck(k, False, "oracle finds vanishing monomials"))
            continue
        found = identity_group_raw(graph)
        group = report.groups[k]
        if group.weighted:
            expected = {p.raw for p, w in group.enumerate_scaled() if w == 1}
        else:
            expected = {p.raw for p in group.enumerate()}
        checks.append(OracleCheck(k, found == expected))
    return checks, edges


def analyze(
    identity: TwoTermIdentity,
    *,
    max_degree: Optional[int] = None,
    oracle_max_k: int = 6,
    seed_latyshev: bool = True,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> AnalysisDocument:
    """Saturate, classify, cross-check against the oracle, and package the result.

    Raises :class:`PredictionMismatch` if a closed-form family degree disagrees
    with the computed one, and :class:`~evcom.saturation.SaturationCapError` on
    resource exhaustion.
    """
    start = time.perf_counter()
    report = saturate(identity, max_degree, seed_latyshev=seed_latyshev,
                      enumeration_cap=enumeration_cap)
    warnings = list(report.notes)
    predicted = predicted_ec_degree(identity)
    if predicted is not None and report.ec_degree is not None and predicted != report.ec_degree:
        raise PredictionMismatch(
            f"computed ec_degree {report.ec_degree} but closed form gives {predicted} "
            f"for {identity}"
        )
    if predicted is not None and report.ec_degree is None:
        warnings.append(f"closed form predicts degree {predicted}, beyond max_degree "
                        f"{report.max_degree}")
    if report.stable_after_full is False:
        warnings.append("H_k stopped being full one degree after the first full degree")

    general = None
    if "fixes_endpoint" in report.classification:
        g = analyze_general(identity, max_degree, oracle_max_k=oracle_max_k,
                            enumeration_cap=enumeration_cap)
        general = _general_summary(g)
    checks, edges = oracle_checks(report, oracle_max_k, enumeration_cap)
    if any(c.agrees is False for c in checks):
        warnings.append("saturation and oracle disagree")
    elapsed = (time.perf_counter() - start) * 1000.0
    return AnalysisDocument(
        identity=identity,
        chain=list(report.chain),
        ec_degree=report.ec_degree,
        nilpotency_degree=report.nilpotency_degree,
        kernel_weight=report.kernel_weight,
        classification=sorted(report.classification),
        predicted_ec_degree=predicted,
        bound_2n_minus_3_respected=report.bound_2n_minus_3_respected,
        stable_after_full=report.stable_after_full,
        oracle=checks,
        general=general,
        warnings=warnings,
        timing_ms=round(elapsed, 3),
        resources={"lifts_tested": report.lifts_tested, "oracle_edges": edges},
    )
