"""Axiom schemas, derivation checking and derivation transformers."""

from .derivation import (
    CheckReport, Derivation, ProofBuilder, ProofFormatError, ProofLine,
    check_derivation, dump_proof, load_proof, load_proof_file,
)
from .library import builtin_proofs, positive_introspection, s_necessitation, strategic_introspection_plus
from .schemas import CORE_SCHEMAS, SCHEMAS, UnknownSchemaError, match_axiom
from .transforms import PreconditionError, b_lift_transform, box_lift_transform, deduction_transform

__all__ = [
    "CheckReport", "Derivation", "ProofBuilder", "ProofFormatError", "ProofLine",
    "check_derivation", "dump_proof", "load_proof", "load_proof_file",
    "builtin_proofs", "positive_introspection", "s_necessitation", "strategic_introspection_plus",
    "CORE_SCHEMAS", "SCHEMAS", "UnknownSchemaError", "match_axiom",
    "PreconditionError", "b_lift_transform", "box_lift_transform", "deduction_transform",
]
