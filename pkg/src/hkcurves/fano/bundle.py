"""Intersection numbers on P(Sym^2 U_F) and on the P^1-bundle over S.

The surface ``S'`` is the zero locus of a section of ``pi^* Q_F^* (x) O(h)`` on
``P = P(Sym^2 U_F)``, so ``[S'] = c4(Q_F^* (x) O(h))``.  Classes on ``P`` are
reduced to ``a0 + a1 h + a2 h^2`` with the relation

    h^3 + c1(E) h^2 + c2(E) h + c3(E) = 0,    E = Sym^2 U_F,

and pushed forward by ``pi_*(a0 + a1 h + a2 h^2) = a2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .chern import FanoPoly, chern_class, chern_tools, fano_integrate

H = FanoPoly.H()
c = FanoPoly.c()


class ClosedFormMismatch(AssertionError):
    """A computed class disagrees with its expected closed form."""


def h3_relation() -> Tuple[FanoPoly, FanoPoly, FanoPoly]:
    """``(u2, u1, u0)`` with ``h^3 = u2 h^2 + u1 h + u0`` on P(Sym^2 U_F)."""
    total = chern_tools()["Sym2U"]
    return (-chern_class(total, 1), -chern_class(total, 2), -chern_class(total, 3))


# h^3 = 3H h^2 - (2H^2 + 4c) h + (5/3) H^3
H3_RELATION_DISPLAY = (3 * H, -(2 * H ** 2 + 4 * c), Fraction(5, 3) * H ** 3)

# [S'] = 5(H^2 - c) h^2 - (35/6) H^3 h + (10/3) H^4
SPRIME_DISPLAY = (Fraction(10, 3) * H ** 4, Fraction(-35, 6) * H ** 3, 5 * (H ** 2 - c))


class PBClass:
    """``a0 + a1 h + a2 h^2`` with FanoPoly coefficients, fully reduced."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[FanoPoly]):
        self.coeffs = _reduce([x if isinstance(x, FanoPoly) else FanoPoly.const(x) for x in coeffs])

    @classmethod
    def h(cls) -> "PBClass":
        return cls([FanoPoly(), FanoPoly.const(1)])

    @classmethod
    def pullback(cls, x) -> "PBClass":
        return cls([x])

    def __add__(self, other: "PBClass") -> "PBClass":
        return PBClass([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other) -> "PBClass":
        if not isinstance(other, PBClass):
            other = PBClass.pullback(other)
        prod = [FanoPoly() for _ in range(5)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                prod[i + j] = prod[i + j] + a * b
        return PBClass(prod)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PBClass":
        out = PBClass.pullback(1)
        for _ in range(k):
            out = out * self
        return out

    def pushforward(self) -> FanoPoly:
        return self.coeffs[2]

    def numerical(self) -> Tuple[FanoPoly, ...]:
        return tuple(x.numerical() for x in self.coeffs)

    def __repr__(self) -> str:
        a0, a1, a2 = self.coeffs
        return f"({a0!r}) + ({a1!r}) h + ({a2!r}) h^2"


def _reduce(coeffs: List[FanoPoly]) -> Tuple[FanoPoly, FanoPoly, FanoPoly]:
    coeffs = list(coeffs) + [FanoPoly()] * max(0, 3 - len(coeffs))
    u2, u1, u0 = h3_relation()
    while len(coeffs) > 3:
        top = coeffs.pop()
        k = len(coeffs) - 3  # top multiplies h^(k+3)
        coeffs[k + 2] = coeffs[k + 2] + top * u2
        coeffs[k + 1] = coeffs[k + 1] + top * u1
        coeffs[k] = coeffs[k] + top * u0
    return tuple(coeffs)


def sprime_class(check: bool = True) -> PBClass:
    """``c4(pi^* Q_F^* (x) O(h))`` reduced; compared with the closed form when ``check``."""
    total = chern_tools()["Q*"]
    cls = PBClass([chern_class(total, 4 - k) for k in range(5)])
    if check:
        for got, want, name in zip(cls.coeffs, SPRIME_DISPLAY, ("h^0", "h^1", "h^2")):
            if not got.numerically_equal(want):
                raise ClosedFormMismatch(f"{name}-coefficient: computed {got!r}, expected {want!r}")
    return cls


def check_h3_relation() -> bool:
    return all(a.numerically_equal(b) for a, b in zip(h3_relation(), H3_RELATION_DISPLAY))


def integrate_on_p(x: PBClass) -> Fraction:
    return fano_integrate(x.pushforward().part(4))


def sprime_numbers() -> Tuple[Fraction, Fraction, Fraction]:
    """``int_S' H^2``, ``int_S' H h`` and ``int_S' h^2``."""
    s = sprime_class(check=False)
    h = PBClass.h()
    Hp = PBClass.pullback(H)
    return (integrate_on_p(s * Hp * Hp), integrate_on_p(s * Hp * h), integrate_on_p(s * h * h))


def p1_pushforward(a1: Fraction, a2: Fraction, c1_normal: Fraction) -> Fraction:
    """Push ``a0 + a1 xi + a2 xi^2`` down a P^1-bundle ``P(N) -> S``.

    Classes on ``S`` are multiples of ``H_S`` (or scalars); ``xi^2 = -c1(N) xi - c2(N)``
    so the pushforward is ``a1 - a2 c1(N)``.
    """
    return a1 - a2 * c1_normal


@dataclass(frozen=True)
class EigenvalueChain:
    pushforward: Fraction   # p_* phi^* H^2 as a multiple of H_S
    n70875: Fraction
    n42525: Fraction
    n945: Fraction


def eigenvalue_chain(phi_H=(7, 3), c1_S=-3) -> EigenvalueChain:
    """Eigenvalue of ``phi_* p^* p_* phi^*`` on ``c``.

    ``phi_H = (x, y)`` encodes ``phi^* H = x p^* H_S + y xi`` and ``c1_S`` encodes
    ``c1(S) = c1_S * H_S``.
    """
    x, y = (Fraction(v) for v in phi_H)
    c1_normal = -Fraction(c1_S)  # c1(N_{S/F}) = -c1(S) since c1(T_F) = 0
    # (x H + y xi)^2 = x^2 H^2 + 2xy H xi + y^2 xi^2; H^2 dies under p_*
    k = p1_pushforward(2 * x * y, y * y, c1_normal)
    deg_S = sprime_numbers()[0]
    H2c = fano_integrate(H ** 2 * c)
    c2 = fano_integrate(c ** 2)
    n70875 = k * k * deg_S
    n42525 = n70875 * c2 / H2c
    return EigenvalueChain(k, n70875, n42525, n42525 / H2c)
