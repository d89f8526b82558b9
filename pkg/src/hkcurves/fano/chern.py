"""Chern classes of tautological bundles on the Fano variety of lines F.

``F`` sits in Gr(2, 6) as the zero locus of a section of ``Sym^3 U^*``.  All
classes considered here are polynomials in ``H = c1(U^*)`` and
``c = c2(U^*)``.  Bundle operations (duals, symmetric powers, tensor products)
are carried out on the formal Chern roots ``a, b`` of ``U^*`` and then
re-expressed in ``H = a + b``, ``c = ab``.

Gradings are by complex codimension: ``H`` has codimension 1, ``c`` has 2 and
``dim F = 4``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Tuple

from .schubert import GrClass, c1 as SIGMA1, c2 as SIGMA11, gr_integrate

DIM_F = 4


class DegreeMismatch(ValueError):
    pass


class FanoPoly:
    """Polynomial in ``H`` (codim 1) and ``c`` (codim 2), truncated above codim 4."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], Fraction] = ()):
        self.terms: Dict[Tuple[int, int], Fraction] = {
            (i, j): Fraction(v) for (i, j), v in dict(terms).items() if v and i + 2 * j <= DIM_F
        }

    @classmethod
    def H(cls) -> "FanoPoly":
        return cls({(1, 0): 1})

    @classmethod
    def c(cls) -> "FanoPoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, x) -> "FanoPoly":
        return cls({(0, 0): x})

    def part(self, codim: int) -> "FanoPoly":
        return FanoPoly({k: v for k, v in self.terms.items() if k[0] + 2 * k[1] == codim})

    def is_homogeneous(self, codim: int) -> bool:
        return all(i + 2 * j == codim for i, j in self.terms)

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return FanoPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return FanoPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + v1 * v2
        return FanoPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = FanoPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, FanoPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), v in sorted(self.terms.items(), key=lambda kv: (kv[0][0] + 2 * kv[0][1], kv[0])):
            mono = "*".join(x for x in (f"H^{i}" if i else "", f"c^{j}" if j else "") if x) or "1"
            parts.append(f"{v}*{mono}")
        return " + ".join(parts)

    def to_grassmannian(self) -> GrClass:
        out = GrClass()
        for (i, j), v in self.terms.items():
            out = out + (SIGMA1 ** i) * (SIGMA11 ** j) * v
        return out

    def numerical(self) -> "FanoPoly":
        """Normal form modulo numerical equivalence on a very general F.

        Codimension 3 collapses onto ``H^3`` and codimension 4 onto ``H^4``;
        codimension <= 2 is untouched since ``H^2`` and ``c`` pair
        nondegenerately.
        """
        out = self.part(0) + self.part(1) + self.part(2)
        deg4 = fano_integrate(FanoPoly.H() ** 4)
        p3 = self.part(3)
        if p3.terms:
            out = out + FanoPoly({(3, 0): fano_integrate(p3 * FanoPoly.H()) / deg4})
        p4 = self.part(4)
        if p4.terms:
            out = out + FanoPoly({(4, 0): fano_integrate(p4) / deg4})
        return out

    def numerically_equal(self, other) -> bool:
        return (self - _as_poly(other)).numerical().terms == {}


def _as_poly(x) -> FanoPoly:
    return x if isinstance(x, FanoPoly) else FanoPoly.const(x)


@lru_cache(maxsize=None)
def fundamental_class_in_gr() -> GrClass:
    """``[F] = c4(Sym^3 U^*)`` inside Gr(2, 6)."""
    return chern_class(chern_tools()["Sym3U*"], 4).to_grassmannian()


def fano_integrate(p: FanoPoly) -> Fraction:
    """``int_F p = int_Gr p * c4(Sym^3 U^*)`` for ``p`` of top codimension."""
    if not p.is_homogeneous(DIM_F):
        raise DegreeMismatch(f"{p!r} is not of codimension {DIM_F}")
    return gr_integrate(p.to_grassmannian() * fundamental_class_in_gr())


# -- formal Chern roots -------------------------------------------------------------


class RootPoly:
    """Polynomial in the Chern roots ``a, b`` of ``U^*``, truncated above degree 4."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], Fraction] = ()):
        self.terms = {k: Fraction(v) for k, v in dict(terms).items() if v and sum(k) <= DIM_F}

    @classmethod
    def linear(cls, const, ca, cb) -> "RootPoly":
        return cls({(0, 0): const, (1, 0): ca, (0, 1): cb})

    def __add__(self, other: "RootPoly") -> "RootPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return RootPoly(out)

    def scaled(self, x) -> "RootPoly":
        return RootPoly({k: v * x for k, v in self.terms.items()})

    def __mul__(self, other: "RootPoly") -> "RootPoly":
        out: Dict[Tuple[int, int], Fraction] = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in other.terms.items():
                if i1 + i2 + j1 + j2 <= DIM_F:
                    key = (i1 + i2, j1 + j2)
                    out[key] = out.get(key, 0) + v1 * v2
        return RootPoly(out)

    def __pow__(self, k: int) -> "RootPoly":
        out = RootPoly({(0, 0): 1})
        for _ in range(k):
            out = out * self
        return out

    def part(self, deg: int) -> "RootPoly":
        return RootPoly({k: v for k, v in self.terms.items() if sum(k) == deg})

    def inverse(self) -> "RootPoly":
        """Inverse of a total Chern class (constant term 1)."""
        if self.terms.get((0, 0)) != 1:
            raise ValueError("only series with constant term 1 are inverted")
        x = self + RootPoly({(0, 0): -1})
        out, term = RootPoly({(0, 0): 1}), RootPoly({(0, 0): 1})
        for _ in range(DIM_F):
            term = term * x.scaled(-1)
            out = out + term
        return out

    def to_fano(self) -> FanoPoly:
        """Rewrite a symmetric polynomial in ``H = a + b`` and ``c = ab``."""
        rest = dict(self.terms)
        out: Dict[Tuple[int, int], Fraction] = {}
        e1 = RootPoly.linear(0, 1, 1)
        e2 = RootPoly({(1, 1): 1})
        while rest:
            (i, j) = max(rest, key=lambda k: (sum(k), k[0]))
            v = rest[(i, j)]
            if rest.get((j, i)) != v:
                raise ValueError("polynomial in the Chern roots is not symmetric")
            out[(i - j, j)] = out.get((i - j, j), 0) + v
            sub = ((e1 ** (i - j)) * (e2 ** j)).scaled(v)
            for k, w in sub.terms.items():
                rest[k] = rest.get(k, 0) - w
                if not rest[k]:
                    del rest[k]
        return FanoPoly(out)


def _total_from_roots(roots) -> RootPoly:
    out = RootPoly({(0, 0): 1})
    for ca, cb in roots:
        out = out * RootPoly.linear(1, ca, cb)
    return out


def _twist(total: RootPoly, rank: int, line: RootPoly) -> RootPoly:
    """``c(E (x) L) = sum_i c_i(E) (1 + c1(L))^(rank - i)``."""
    one_plus = RootPoly({(0, 0): 1}) + line
    out = RootPoly()
    for i in range(rank + 1):
        out = out + total.part(i) * (one_plus ** (rank - i))
    return out


def _dual(total: RootPoly) -> RootPoly:
    return RootPoly({k: v * (-1) ** sum(k) for k, v in total.terms.items()})


def chern_tools() -> Dict[str, FanoPoly]:
    """Total Chern classes of the bundles entering the intersection computations."""
    return dict(_chern_tools())


@lru_cache(maxsize=None)
def _chern_tools() -> Dict[str, FanoPoly]:
    a = RootPoly.linear(0, 1, 0)
    b = RootPoly.linear(0, 0, 1)
    c_U_dual = _total_from_roots([(1, 0), (0, 1)])
    c_Q = _dual(c_U_dual).inverse()          # 0 -> U -> O^6 -> Q -> 0
    c_Q_dual = _dual(c_Q)
    c_sym3 = _total_from_roots([(3, 0), (2, 1), (1, 2), (0, 3)])
    c_sym2_U = _total_from_roots([(-2, 0), (-1, -1), (0, -2)])
    c_T_gr = _twist(c_Q, 4, a) * _twist(c_Q, 4, b)   # T_Gr = U^* (x) Q
    c_T_F = c_T_gr * c_sym3.inverse()                # 0 -> T_F -> T_Gr|F -> Sym^3 U^* -> 0
    return {
        "U*": c_U_dual.to_fano(),
        "Q": c_Q.to_fano(),
        "Q*": c_Q_dual.to_fano(),
        "Sym3U*": c_sym3.to_fano(),
        "Sym2U": c_sym2_U.to_fano(),
        "T_Gr": c_T_gr.to_fano(),
        "T_F": c_T_F.to_fano(),
    }


def chern_class(total: FanoPoly, i: int) -> FanoPoly:
    return total.part(i)
