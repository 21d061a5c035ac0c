"""Exact computation of eventual commutativity for two-term multilinear identities
``x_1 ... x_n = q x_sigma(1) ... x_sigma(n)``."""

from .groups import EnumerationCapError, SubgroupRep, generate
from .oracle import ABSENT, ZERO, build_graph, equivalent, identity_group, nilpotent_at
from .perm import (
    Permutation,
    PermutationError,
    TwoTermIdentity,
    block_decompose,
    compose,
    format_perm,
    inverse,
    parity,
    parse_perm,
)
from .report import AnalysisDocument, PredictionMismatch, analyze
from .saturation import (
    SaturationCapError,
    analyze_general,
    classify,
    latyshev_seed,
    lift_Ti,
    predicted_ec_degree,
    saturate,
)

__version__ = "0.1.0"

__all__ = [
    "ABSENT", "ZERO", "AnalysisDocument", "EnumerationCapError", "Permutation",
    "PermutationError", "PredictionMismatch", "SaturationCapError", "SubgroupRep",
    "TwoTermIdentity", "analyze", "analyze_general", "block_decompose", "build_graph",
    "classify", "compose", "equivalent", "format_perm", "generate", "identity_group",
    "inverse", "latyshev_seed", "lift_Ti", "nilpotent_at", "parity", "parse_perm",
    "predicted_ec_degree", "saturate",
]
