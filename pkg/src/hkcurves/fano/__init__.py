"""Intersection theory on the Fano variety of lines of a cubic fourfold."""

from .bundle import (
    EigenvalueChain,
    ClosedFormMismatch,
    PBClass,
    eigenvalue_chain,
    h3_relation,
    sprime_numbers,
    sprime_class,
)
from .chern import DegreeMismatch, FanoPoly, chern_tools, fano_integrate
from .schubert import GrClass, gr_integrate, pieri_mul
from .verify import Check, consistency_web, fano_checks

__all__ = [
    "Check",
    "DegreeMismatch",
    "EigenvalueChain",
    "FanoPoly",
    "GrClass",
    "ClosedFormMismatch",
    "PBClass",
    "chern_tools",
    "consistency_web",
    "eigenvalue_chain",
    "fano_checks",
    "fano_integrate",
    "gr_integrate",
    "h3_relation",
    "sprime_numbers",
    "pieri_mul",
    "sprime_class",
]
