"""Generating pairs of order-k elements for A_n and S_n, with exact checks."""

from .certify import (
    CriterionContradictsGroundTruth,
    Outcome,
    Verdict,
    VerificationReport,
    certify,
    check_claims,
)
from .groups import GroupHandle, bsgs, group_order, is_primitive, is_transitive
from .kernels import BACKEND
from .pairs import (
    CaseLabel,
    ExclusionReason,
    GeneratorPair,
    InadmissibleTriple,
    OmegaTriple,
    admissible_triples,
    build_pair,
    classify,
    select_case,
)
from .perm import Permutation, compose, format_cycles, inverse, parse_cycles

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CaseLabel",
    "CriterionContradictsGroundTruth",
    "ExclusionReason",
    "GeneratorPair",
    "GroupHandle",
    "InadmissibleTriple",
    "OmegaTriple",
    "Outcome",
    "Permutation",
    "Verdict",
    "VerificationReport",
    "admissible_triples",
    "bsgs",
    "build_pair",
    "certify",
    "check_claims",
    "classify",
    "compose",
    "format_cycles",
    "group_order",
    "inverse",
    "is_primitive",
    "is_transitive",
    "parse_cycles",
    "select_case",
]
