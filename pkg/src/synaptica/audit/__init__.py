"""Randomized, seed-deterministic audit of the axioms and their consequences."""
from .faults import FAULTS, inject
from .generators import MatrixGen, SetFnGen, make_gen
from .laws import LAWS, Checker, Law, axioms, theorems
from .runner import (
    AuditReport,
    LawResult,
    audit,
    audit_axioms,
    audit_theorems,
    counterexample_shrink,
    run_trial,
)

__all__ = [
    "FAULTS",
    "LAWS",
    "AuditReport",
    "Checker",
    "Law",
    "LawResult",
    "MatrixGen",
    "SetFnGen",
    "audit",
    "audit_axioms",
    "audit_theorems",
    "axioms",
    "counterexample_shrink",
    "inject",
    "make_gen",
    "run_trial",
    "theorems",
]
