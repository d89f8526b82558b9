"""Exact q-expansions of quasi-Jacobi forms, the uniruled-divisor criterion for
K3^[n]-type varieties, and intersection numbers on the Fano variety of lines."""

from .criterion import (
    BetaClass,
    Decision,
    Witness,
    decide_uniruled,
    eigenvalues,
    multiplicity,
    search_witness,
)
from .jacobi import JacobiElement, ResidueSet, jcoeff, named_form
from .qseries import QYSeries

__version__ = "0.1.0"

__all__ = [
    "BetaClass",
    "Decision",
    "JacobiElement",
    "QYSeries",
    "ResidueSet",
    "Witness",
    "decide_uniruled",
    "eigenvalues",
    "jcoeff",
    "multiplicity",
    "named_form",
    "search_witness",
]
