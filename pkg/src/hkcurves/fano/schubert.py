"""Schubert calculus on the Grassmannian Gr(2, 6).

Classes are linear combinations of ``sigma_{a,b}`` with ``4 >= a >= b >= 0``.
Products reduce to the Pieri rule through the two-row Giambelli formula
``sigma_{a,b} = sigma_a sigma_b - sigma_{a+1} sigma_{b-1}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Tuple

WIDTH = 4  # n - k for Gr(2, 6)
DIM = 2 * WIDTH

Partition = Tuple[int, int]


class GrClass:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Partition, Fraction] = ()):
        clean = {}
        for (a, b), v in dict(terms).items():
            if not (WIDTH >= a >= b >= 0):
                raise ValueError(f"sigma_{a},{b} is not in the 2 x {WIDTH} box")
            if v:
                clean[(a, b)] = Fraction(v)
        self.terms: Dict[Partition, Fraction] = clean

    @classmethod
    def sigma(cls, a: int, b: int = 0) -> "GrClass":
        return cls({(a, b): 1})

    @classmethod
    def one(cls) -> "GrClass":
        return cls.sigma(0, 0)

    def degree_parts(self) -> Dict[int, "GrClass"]:
        parts: Dict[int, dict] = {}
        for (a, b), v in self.terms.items():
            parts.setdefault(a + b, {})[(a, b)] = v
        return {k: GrClass(v) for k, v in parts.items()}

    def __add__(self, other: "GrClass") -> "GrClass":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return GrClass(out)

    def __sub__(self, other: "GrClass") -> "GrClass":
        return self + other.scaled(-1)

    def scaled(self, c) -> "GrClass":
        return GrClass({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GrClass):
            return pieri_mul(self, other)
        return self.scaled(other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GrClass":
        out = GrClass.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, GrClass) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*s{a}{b}" for (a, b), v in sorted(self.terms.items()))


def _pieri_special(lam: Partition, k: int) -> Dict[Partition, int]:
    """``sigma_lam * sigma_k`` for a special class ``sigma_k``."""
    a, b = lam
    if k == 0:
        return {lam: 1}
    if k < 0 or k > WIDTH:
        return {}
    total = a + b + k
    out = {}
    for c in range(a, WIDTH + 1):
        d = total - c
        if b <= d <= a:
            out[(c, d)] = 1
    return out


def _times_special(x: Dict[Partition, Fraction], k: int) -> Dict[Partition, Fraction]:
    out: Dict[Partition, Fraction] = {}
    for lam, v in x.items():
        for mu, m in _pieri_special(lam, k).items():
            out[mu] = out.get(mu, 0) + v * m
    return out


def pieri_mul(x: GrClass, y: GrClass) -> GrClass:
    out: Dict[Partition, Fraction] = {}
    for (c, d), w in y.terms.items():
        # sigma_{c,d} = sigma_c sigma_d - sigma_{c+1} sigma_{d-1}
        first = _times_special(_times_special(x.terms, c), d)
        second = _times_special(_times_special(x.terms, c + 1), d - 1) if d > 0 else {}
        for mu, v in first.items():
            out[mu] = out.get(mu, 0) + w * v
        for mu, v in second.items():
            out[mu] = out.get(mu, 0) - w * v
    return GrClass(out)


def gr_integrate(p: GrClass) -> Fraction:
    """Degree of the point-class component ``sigma_{4,4}``."""
    return p.terms.get((WIDTH, WIDTH), Fraction(0))


c1 = GrClass.sigma(1)       # c1(U^*)
c2 = GrClass.sigma(1, 1)    # c2(U^*)
