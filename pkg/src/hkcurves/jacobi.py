"""The named quasi-Jacobi forms and their norm/residue coefficient notation.

Everything here is built without the Weierstrass function.  The theta
function is expanded from its product formula, and the form

    phi = (-wp + E2/12) * Theta^2

is obtained from ``phi = Dy^2(Theta) Theta - Dy(Theta)^2`` with ``Dy = y d/dy``.
That expression has finite ``y``-support at every ``q``-order, whereas the
``q^0`` term ``y/(1+y)^2`` of ``wp`` does not.  ``wp`` itself is only available
as a windowed series (:func:`wp_windowed`) for cross-checks.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, FrozenSet, List, Optional, Tuple

from .qseries import (
    DEFAULT_QPREC,
    QYSeries,
    add,
    as_rational,
    coeff_at,
    dy,
    invert_q_unit,
    mul,
    power,
    scale,
)


class InadmissiblePair(ValueError):
    """No coefficient ``q^d y^r`` has the requested norm and residue."""


@dataclass(frozen=True)
class JacobiElement:
    series: QYSeries
    weight: Optional[int]
    index: Fraction  # half-integral only for Theta itself

    def __mul__(self, other: "JacobiElement") -> "JacobiElement":
        if not isinstance(other, JacobiElement):
            return JacobiElement(scale(self.series, other), self.weight, self.index)
        weight = None if self.weight is None or other.weight is None else self.weight + other.weight
        return JacobiElement(mul(self.series, other.series), weight, self.index + other.index)

    __rmul__ = __mul__

    def __add__(self, other: "JacobiElement") -> "JacobiElement":
        if self.index != other.index:
            raise ValueError(f"cannot add index {self.index} and index {other.index}")
        weight = self.weight if self.weight == other.weight else None
        return JacobiElement(add(self.series, other.series), weight, self.index)

    def __sub__(self, other: "JacobiElement") -> "JacobiElement":
        return self + other * -1

    def __pow__(self, k: int) -> "JacobiElement":
        weight = None if self.weight is None else self.weight * k
        return JacobiElement(power(self.series, k), weight, self.index * k)

    def over_delta(self, q_prec: int) -> "JacobiElement":
        """Divide by the discriminant; ``q_prec`` is the desired output precision."""
        inv = invert_q_unit(delta(q_prec + 2).series)
        weight = None if self.weight is None else self.weight - 12
        return JacobiElement(mul(self.series, inv), weight, self.index)

    @property
    def integral_index(self) -> int:
        if self.index.denominator != 1:
            raise ValueError(f"index {self.index} is not integral")
        return int(self.index)


@dataclass(frozen=True)
class ResidueSet:
    """``{+rho, -rho}`` in ``Z/modulus``; modulus 0 means the trivial set ``{0}``."""

    modulus: int
    values: FrozenSet[int]

    @classmethod
    def of(cls, rho: int, modulus: int) -> "ResidueSet":
        if modulus < 0:
            raise ValueError("modulus must be nonnegative")
        if modulus == 0:
            return cls(0, frozenset({0}))
        return cls(modulus, frozenset({rho % modulus, -rho % modulus}))

    def representative(self) -> int:
        """Member of smallest absolute value, taken nonnegative."""
        if self.modulus == 0:
            return 0
        r0 = min(self.values)
        return min(r0, self.modulus - r0)

    def __contains__(self, r: int) -> bool:
        if self.modulus == 0:
            return True
        return r % self.modulus in self.values

    def __str__(self) -> str:
        return f"±[{self.representative()}] mod {self.modulus}"


# -- building blocks ------------------------------------------------------------


def euler_product(exponent: int, q_prec: int) -> QYSeries:
    """``prod_{m>=1} (1 - q^m)^exponent`` to precision ``q_prec``."""
    base = QYSeries.constant(1, q_prec=q_prec)
    for m in range(1, q_prec):
        factor = QYSeries({(0, 0): 1, (m, 0): -1}, q_prec=q_prec, q_min=0)
        base = mul(base, power(factor, abs(exponent)))
    return base if exponent >= 0 else invert_q_unit(base)


def theta(q_prec: int = DEFAULT_QPREC) -> JacobiElement:
    """Theta(q, y) from its product formula, ``y`` exponents half-integral."""
    if q_prec < 1:
        raise ValueError("precision must be at least 1")
    s = QYSeries({(0, 1): 1, (0, -1): 1}, q_prec=q_prec, q_min=0)
    for m in range(1, q_prec):
        s = mul(s, QYSeries({(0, 0): 1, (m, 2): 1}, q_prec=q_prec, q_min=0))
        s = mul(s, QYSeries({(0, 0): 1, (m, -2): 1}, q_prec=q_prec, q_min=0))
    s = mul(s, euler_product(-2, q_prec))
    return JacobiElement(s, -1, Fraction(1, 2))


def bernoulli(k: int) -> Fraction:
    """Bernoulli number ``B_k`` with ``B_1 = -1/2``."""
    b = [Fraction(1)]
    for n in range(1, k + 1):
        acc = Fraction(0)
        binom = 1
        for j in range(n):
            acc += binom * b[j]
            binom = binom * (n + 1 - j) // (j + 1)
        b.append(-acc / (n + 1))
    return b[k]


def sigma(n: int, k: int) -> int:
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def eisenstein(k: int, q_prec: int = DEFAULT_QPREC) -> JacobiElement:
    if k not in (2, 4, 6):
        raise ValueError("only E2, E4, E6 are provided")
    c = -2 * k / bernoulli(k)
    coeffs = [1] + [c * sigma(m, k - 1) for m in range(1, q_prec)]
    return JacobiElement(QYSeries.from_q_coefficients(coeffs, 0, q_prec), k, Fraction(0))


def delta(q_prec: int = DEFAULT_QPREC) -> JacobiElement:
    """``q prod (1 - q^m)^24``."""
    if q_prec < 2:
        raise ValueError("precision must be at least 2")
    body = euler_product(24, q_prec - 1)
    shifted = {(d + 1, r2): v for (d, r2), v in body.items()}
    return JacobiElement(QYSeries(shifted, q_prec=q_prec, q_min=1), 12, Fraction(0))


def delta_from_eisenstein(q_prec: int = DEFAULT_QPREC) -> JacobiElement:
    e4, e6 = eisenstein(4, q_prec).series, eisenstein(6, q_prec).series
    s = scale(add(power(e4, 3), scale(power(e6, 2), -1)), Fraction(1, 1728))
    return JacobiElement(QYSeries(dict(s.items()), q_prec=q_prec, q_min=1), 12, Fraction(0))


def wp_windowed(q_prec: int, window: int) -> JacobiElement:
    """Weierstrass ``wp`` expanded literally, keeping only ``|r| <= window``."""
    if window < 1:
        raise ValueError("window must be at least 1")
    terms: Dict[Tuple[int, int], Fraction] = {(0, 0): Fraction(1, 12)}
    for d in range(1, window + 1):
        # -y/(1+y)^2 = -sum_{d>=1} (-1)^(d+1) d y^d
        terms[(0, 2 * d)] = Fraction(-((-1) ** (d + 1)) * d)
    for m in range(1, q_prec):
        for d in range(1, m + 1):
            if m % d:
                continue
            terms[(m, 0)] = terms.get((m, 0), 0) - 2 * d
            if d <= window:
                sign = (-1) ** d
                terms[(m, 2 * d)] = terms.get((m, 2 * d), 0) + sign * d
                terms[(m, -2 * d)] = terms.get((m, -2 * d), 0) + sign * d
    s = QYSeries(terms, q_prec=q_prec, q_min=0, y_window=Fraction(window))
    return JacobiElement(s, 2, Fraction(0))


def phi(q_prec: int = DEFAULT_QPREC) -> JacobiElement:
    t = theta(q_prec).series
    dt = dy(t)
    s = add(mul(dy(dt), t), scale(mul(dt, dt), -1))
    return JacobiElement(s, 0, Fraction(1))


def phi_via_convolution(q_prec: int = DEFAULT_QPREC) -> JacobiElement:
    """phi from half the sum ``c(n1,k1) c(n2,k2) (k1-k2)^2`` over Theta coefficients."""
    t = list(theta(q_prec).series.items())
    acc: Dict[Tuple[int, int], Fraction] = {}
    for (n1, a1), c1 in t:
        for (n2, a2), c2 in t:
            n = n1 + n2
            if n >= q_prec:
                continue
            # a = 2k, so (k1 - k2)^2 / 2 = (a1 - a2)^2 / 8
            key = (n, a1 + a2)
            acc[key] = acc.get(key, 0) + Fraction(c1 * c2 * (a1 - a2) ** 2, 8)
    return JacobiElement(QYSeries(acc, q_prec=q_prec, q_min=0), 0, Fraction(1))


# -- named forms ----------------------------------------------------------------

_cache: Dict[Tuple[str, int, int], JacobiElement] = {}
_cache_lock = threading.RLock()

NAMED_FORMS = ("theta", "phi_m21", "phi_01", "phi", "f", "g", "theta2_over_delta",
               "phi_pow_over_delta", "delta", "e2", "e4", "e6")


def _build(name: str, q_prec: int, n: int) -> JacobiElement:
    if name == "theta":
        return theta(q_prec)
    if name == "phi":
        return phi(q_prec)
    if name == "delta":
        return delta(q_prec)
    if name in ("e2", "e4", "e6"):
        return eisenstein(int(name[1]), q_prec)
    if name == "phi_m21":
        t = theta(q_prec)
        return JacobiElement((t * t).series, -2, Fraction(1))
    if name == "phi_01":
        # 12 wp Theta^2 = E2 Theta^2 - 12 phi
        t2 = named_form("phi_m21", q_prec)
        return eisenstein(2, q_prec) * t2 - phi(q_prec) * 12
    if name == "f":
        return phi(q_prec + 1).over_delta(q_prec)
    if name == "theta2_over_delta":
        return named_form("phi_m21", q_prec + 1).over_delta(q_prec)
    if name == "g":
        # (-12/5 wp - E2) Theta^2 = (12 phi - 6 E2 Theta^2) / 5
        t2 = named_form("phi_m21", q_prec + 1)
        num = phi(q_prec + 1) * 12 - eisenstein(2, q_prec + 1) * t2 * 6
        return (num * Fraction(1, 5)).over_delta(q_prec)
    if name == "phi_pow_over_delta":
        if n < 1:
            raise ValueError("phi_pow_over_delta needs n >= 1")
        return (phi(q_prec + 1) ** (n - 1)).over_delta(q_prec)
    raise KeyError(f"unknown form {name!r}; choose from {', '.join(NAMED_FORMS)}")


def named_form(name: str, q_prec: int = DEFAULT_QPREC, n: int = 2) -> JacobiElement:
    """Cached constructor; the result is exact for all ``q^d`` with ``d < q_prec``."""
    key = (name, q_prec, n if name == "phi_pow_over_delta" else 0)
    with _cache_lock:
        hit = _cache.get(key)
        if hit is None:
            hit = _cache[key] = _build(name, q_prec, n)
    return hit


# -- coefficient notation ---------------------------------------------------------


def invariant(d: int, r2: int, m: int) -> Fraction:
    """``2d - r^2/(2m)`` for ``r = r2/2``; ``2d`` when ``m = 0``."""
    if m == 0:
        return Fraction(2 * d)
    return 2 * d - Fraction(r2 * r2, 8 * m)


def locate(norm, rho: ResidueSet, m: int) -> Tuple[int, int]:
    """The ``(d, r)`` used to read the coefficient with invariants ``(norm, rho)``."""
    norm = as_rational(norm)
    if m == 0:
        if rho.modulus != 0:
            raise InadmissiblePair("index-0 forms take the trivial residue set")
        half = norm / 2
        if half.denominator != 1:
            raise InadmissiblePair(f"norm {norm} is not even")
        return int(half), 0
    if rho.modulus != 2 * m:
        raise InadmissiblePair(f"residue modulus {rho.modulus} does not match index {m}")
    r = rho.representative()
    d2 = norm + Fraction(r * r, 2 * m)
    if d2.denominator != 1 or d2.numerator % 2:
        raise InadmissiblePair(f"no coefficient with norm {norm} and residue {rho}")
    return d2.numerator // 2, r


def jcoeff(form: JacobiElement, norm, rho: ResidueSet) -> Fraction:
    d, r = locate(norm, rho, form.integral_index)
    return coeff_at(form.series, d, 2 * r)


def is_admissible(norm, rho: ResidueSet, m: int) -> bool:
    try:
        locate(norm, rho, m)
    except InadmissiblePair:
        return False
    return True


# -- structural checks used by the test-suite and the CLI ---------------------------


def lemma_violations(form: JacobiElement, m: Optional[int] = None) -> List[tuple]:
    """Pairs of coefficients with equal ``(2d - r^2/2m, ±[r])`` that differ.

    Every stored term is compared against all equivalent positions inside the
    exact range, so a missing (zero) partner is caught as well.
    """
    m = form.integral_index if m is None else m
    s = form.series
    bad = []
    for (d, r2), v in s.items():
        if r2 % 2:
            continue
        r = r2 // 2
        D = invariant(d, r2, m)
        for sign in (1, -1):
            k = 0
            while True:
                moved = False
                for rr in {sign * r + 2 * m * k, sign * r - 2 * m * k}:
                    dd2 = D + Fraction(rr * rr, 2 * m)
                    dd = dd2 / 2
                    assert dd.denominator == 1
                    dd = int(dd)
                    if dd < s.q_prec:
                        moved = True
                        if coeff_at(s, dd, 2 * rr) != v:
                            bad.append(((d, r), (dd, rr), v, coeff_at(s, dd, 2 * rr)))
                if not moved:
                    break
                k += 1
    return bad


def positivity_violations(q_prec: int = 10) -> List[tuple]:
    """Positions where phi's sign disagrees with ``D = 2d - r^2/2 >= 0``."""
    s = phi(q_prec).series
    bad = []
    for d in range(0, q_prec):
        rmax = 2 * isqrt(4 * d + 4) + 2
        for r in range(-rmax, rmax + 1):
            c = coeff_at(s, d, 2 * r)
            D = invariant(d, 2 * r, 1)
            if c < 0 or (c > 0) != (D >= 0):
                bad.append((d, r, D, c))
    for (d, r2), c in s.items():
        if r2 % 2 or c < 0:
            bad.append((d, Fraction(r2, 2), None, c))
    return bad


def theta_support_violations(q_prec: int = 10) -> List[tuple]:
    """Theta coefficients violating: nonzero iff r half-odd and 2n >= r^2 - 1/4 (then > 0)."""
    s = theta(q_prec).series
    bad = []
    for n in range(q_prec):
        rmax = isqrt(2 * n + 1) + 2
        for r2 in range(-2 * rmax, 2 * rmax + 1):
            c = coeff_at(s, n, r2)
            r = Fraction(r2, 2)
            expect_pos = r2 % 2 == 1 and 2 * n >= r * r - Fraction(1, 4)
            if (expect_pos and c <= 0) or (not expect_pos and c != 0):
                bad.append((n, r, c))
    return bad
