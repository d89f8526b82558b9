"""Named checks for the Fano variety of lines, as reported by ``hkcurves fano verify``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from ..criterion import BetaClass, eigenvalues, multiplicity
from .bundle import (
    ClosedFormMismatch,
    check_h3_relation,
    eigenvalue_chain,
    sprime_numbers,
    sprime_class,
)
from .chern import FanoPoly, chern_class, chern_tools, fano_integrate

Value = Union[Fraction, bool]

# phi_*[D] as a multiple of H, used only as a cross-check.
UNIRULED_DIVISOR_DEGREE = 60
FANO_NORM = Fraction(3, 2)    # (beta, beta) of the primitive class
FANO_DUAL = Fraction(1, 2)    # (beta, -) = (1/2) H


@dataclass(frozen=True)
class Check:
    name: str
    value: Value
    expected: Value

    @property
    def ok(self) -> bool:
        return self.value == self.expected

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name} = {_fmt(self.value)} (expected {_fmt(self.expected)})"


def _fmt(v: Value) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def markman_class() -> FanoPoly:
    """``v = 5 h^2 - (1/6)(beta,beta) c2(F)`` with ``h = (beta, -) = H/2``."""
    h = FANO_DUAL * FanoPoly.H()
    return 5 * h ** 2 - (FANO_NORM / 6) * chern_class(chern_tools()["T_F"], 2)


def pairing_determinant() -> Fraction:
    """Determinant of the intersection form on span(H^2, c)."""
    H, c = FanoPoly.H(), FanoPoly.c()
    a, b, d = (fano_integrate(x) for x in (H ** 4, H ** 2 * c, c ** 2))
    return a * d - b * b


def consistency_web() -> List[Check]:
    beta = BetaClass.make(2, FANO_NORM, 1)
    mult = multiplicity(beta)
    c = FanoPoly.c()
    v = markman_class()
    chain = eigenvalue_chain()
    return [
        Check("multiplicity(n=2, 3/2)", mult, Fraction(120)),
        Check("multiplicity * (1/2) vs phi_*[D]/H", mult * FANO_DUAL, Fraction(UNIRULED_DIVISOR_DEGREE)),
        Check("v_F == 2c", v == 2 * c, True),
        Check("int v_F^2", fano_integrate(v * v), 48 * FANO_NORM ** 2),
        Check("lambda2(3/2) == fano n945", eigenvalues(beta)[1], chain.n945),
    ]


def fano_checks() -> List[Check]:
    H, c = FanoPoly.H(), FanoPoly.c()
    checks = [
        Check("int_F H^4", fano_integrate(H ** 4), Fraction(108)),
        Check("int_F H^2 c", fano_integrate(H ** 2 * c), Fraction(45)),
        Check("int_F c^2", fano_integrate(c ** 2), Fraction(27)),
        Check("pairing determinant", pairing_determinant(), Fraction(891)),
        Check("8c == 5H^2 - c2(T_F)", 5 * H ** 2 - chern_class(chern_tools()["T_F"], 2) == 8 * c, True),
        Check("h^3 relation matches closed form", check_h3_relation(), True),
    ]
    try:
        sprime_class()
        matched = True
    except ClosedFormMismatch:
        matched = False
    checks.append(Check("[S'] matches closed form", matched, True))
    names = ("int_S' H^2", "int_S' H h", "int_S' h^2")
    checks += [Check(n, v, Fraction(315)) for n, v in zip(names, sprime_numbers())]
    chain = eigenvalue_chain()
    checks += [
        Check("p_* phi^* H^2 / H_S", chain.pushforward, Fraction(15)),
        Check("n70875", chain.n70875, Fraction(70875)),
        Check("n42525", chain.n42525, Fraction(42525)),
        Check("n945", chain.n945, Fraction(945)),
    ]
    return checks + consistency_web()
