"""Truncated bivariate Laurent series in ``q`` and ``y`` with exact coefficients.

A :class:`QYSeries` stores finitely many terms ``c * q^d * y^(r2/2)``.  The
``y`` exponent is kept doubled (``r2``) so that the half-integral powers coming
from the theta function still give integral dictionary keys.

Truncation is explicit: every series knows the range ``q_min <= d < q_prec`` on
which its coefficients are exact, and every operation propagates that range so
that no returned coefficient is ever an artefact of truncation.

Coefficients are Python ints when integral and :class:`fractions.Fraction`
otherwise; :func:`coeff_at` always hands back a ``Fraction``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

Coefficient = Union[int, Fraction]
Key = Tuple[int, int]

DEFAULT_QPREC = 12


class SeriesError(ArithmeticError):
    """Base class for truncated-series errors."""


class WindowUnderflow(SeriesError):
    pass


class NotInvertible(SeriesError):
    pass


class PrecisionExceeded(SeriesError):
    pass


class WindowExceeded(SeriesError):
    pass


def as_rational(x) -> Fraction:
    """Parse ``x`` (int, Fraction, or a ``"p/q"`` string) into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _canon(x: Coefficient) -> Coefficient:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _clean(terms: Mapping[Key, Coefficient]) -> Dict[Key, Coefficient]:
    return {k: _canon(v) for k, v in terms.items() if v != 0}


class QYSeries:
    """Immutable truncated Laurent series in ``q`` and ``y^(1/2)``.

    Parameters
    ----------
    terms:
        Mapping ``(d, r2) -> coefficient``.  Zero coefficients and terms
        outside ``[q_min, q_prec)`` are dropped.
    q_min:
        Declared lower bound for the ``q``-valuation.  Defaults to the
        smallest stored ``d`` (0 for the zero series).
    q_prec:
        Coefficients of ``q^d`` are exact for ``d < q_prec``.
    y_window:
        If given, only coefficients with ``|r| <= y_window`` are exact.
    """

    __slots__ = ("_terms", "q_min", "q_prec", "y_window")

    def __init__(
        self,
        terms: Mapping[Key, Coefficient] = (),
        q_prec: int = DEFAULT_QPREC,
        q_min: Optional[int] = None,
        y_window: Optional[Fraction] = None,
    ):
        terms = dict(terms)
        if q_min is None:
            q_min = min((d for d, _ in terms), default=0)
        if y_window is not None:
            y_window = Fraction(y_window)
            terms = {k: v for k, v in terms.items() if abs(k[1]) <= 2 * y_window}
        terms = {k: v for k, v in terms.items() if q_min <= k[0] < q_prec}
        self._terms = _clean(terms)
        self.q_min = q_min
        self.q_prec = q_prec
        self.y_window = y_window

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c, q_prec: int = DEFAULT_QPREC) -> "QYSeries":
        return cls({(0, 0): as_rational(c)}, q_prec=q_prec, q_min=0)

    @classmethod
    def zero(cls, q_prec: int = DEFAULT_QPREC) -> "QYSeries":
        return cls({}, q_prec=q_prec, q_min=0)

    @classmethod
    def monomial(cls, d: int, r2: int, c=1, q_prec: int = DEFAULT_QPREC) -> "QYSeries":
        return cls({(d, r2): as_rational(c)}, q_prec=q_prec, q_min=min(d, 0))

    @classmethod
    def from_q_coefficients(cls, coeffs: Iterable, q_min: int = 0, q_prec: Optional[int] = None):
        """Build a ``y``-free series from the list ``[c_{q_min}, c_{q_min+1}, ...]``."""
        coeffs = list(coeffs)
        if q_prec is None:
            q_prec = q_min + len(coeffs)
        terms = {(q_min + i, 0): as_rational(c) for i, c in enumerate(coeffs)}
        return cls(terms, q_prec=q_prec, q_min=q_min)

    # -- inspection ---------------------------------------------------------

    def items(self) -> Iterator[Tuple[Key, Coefficient]]:
        return iter(sorted(self._terms.items()))

    def keys(self):
        return self._terms.keys()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms))

    def is_zero(self) -> bool:
        return not self._terms

    def is_y_free(self) -> bool:
        return all(r2 == 0 for _, r2 in self._terms)

    def valuation(self) -> Optional[int]:
        return min((d for d, _ in self._terms), default=None)

    def y_support(self) -> int:
        """Largest ``|r2|`` among stored terms."""
        return max((abs(r2) for _, r2 in self._terms), default=0)

    def q_row(self, d: int) -> Dict[int, Coefficient]:
        return {r2: v for (dd, r2), v in self._terms.items() if dd == d}

    def coeff_at(self, d: int, r2: int) -> Fraction:
        return coeff_at(self, d, r2)

    def truncate(self, q_prec: int) -> "QYSeries":
        return QYSeries(self._terms, q_prec=min(q_prec, self.q_prec), q_min=self.q_min,
                        y_window=self.y_window)

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, QYSeries):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def agrees_with(self, other: "QYSeries") -> bool:
        """Equality on the range where both series are exact."""
        prec = min(self.q_prec, other.q_prec)
        window = _min_window(self.y_window, other.y_window)
        return _restrict(self, prec, window) == _restrict(other, prec, window)

    def __repr__(self) -> str:
        shown = ", ".join(f"q^{d} y^{Fraction(r2, 2)}: {v}" for (d, r2), v in list(self.items())[:6])
        more = "" if len(self) <= 6 else ", ..."
        return f"QYSeries({{{shown}{more}}}, q_min={self.q_min}, q_prec={self.q_prec})"

    # -- arithmetic sugar ---------------------------------------------------

    def __add__(self, other):
        return add(self, _coerce(other, self))

    __radd__ = __add__

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return add(self, negate(_coerce(other, self)))

    def __rsub__(self, other):
        return add(_coerce(other, self), negate(self))

    def __mul__(self, other):
        if isinstance(other, QYSeries):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __pow__(self, k: int):
        return power(self, k)


def _coerce(x, like: QYSeries) -> QYSeries:
    if isinstance(x, QYSeries):
        return x
    return QYSeries.constant(x, q_prec=like.q_prec)


def _min_window(a, b):
    present = [w for w in (a, b) if w is not None]
    return min(present) if present else None


def _restrict(s: QYSeries, prec: int, window) -> Dict[Key, Coefficient]:
    return {
        (d, r2): v
        for (d, r2), v in s._terms.items()
        if d < prec and (window is None or abs(r2) <= 2 * window)
    }


def negate(a: QYSeries) -> QYSeries:
    return QYSeries({k: -v for k, v in a._terms.items()}, a.q_prec, a.q_min, a.y_window)


def scale(a: QYSeries, c) -> QYSeries:
    c = as_rational(c)
    return QYSeries({k: v * c for k, v in a._terms.items()}, a.q_prec, a.q_min, a.y_window)


def add(a: QYSeries, b: QYSeries) -> QYSeries:
    prec = min(a.q_prec, b.q_prec)
    terms: Dict[Key, Coefficient] = dict(a._terms)
    for k, v in b._terms.items():
        terms[k] = terms.get(k, 0) + v
    return QYSeries(terms, q_prec=prec, q_min=min(a.q_min, b.q_min),
                    y_window=_min_window(a.y_window, b.y_window))


def mul(a: QYSeries, b: QYSeries, window=None) -> QYSeries:
    """Cauchy product, exact on the propagated range.

    When one factor is windowed the result is exact only for
    ``|r| <= W_in - (y-support of the other factor)``; ``window`` may request
    anything up to that bound and defaults to it.
    """
    if a.y_window is not None and b.y_window is not None:
        raise WindowUnderflow("product of two windowed series is not supported")
    out_window = None
    if a.y_window is not None or b.y_window is not None:
        win, other = (a, b) if a.y_window is not None else (b, a)
        limit = win.y_window - Fraction(other.y_support(), 2)
        if window is None:
            window = limit
        window = Fraction(window)
        if limit < 0 or window > limit:
            raise WindowUnderflow(
                f"requested y-window {window} exceeds guaranteed window {limit}")
        out_window = window

    prec = min(a.q_prec + b.q_min, b.q_prec + a.q_min)
    if len(a) > len(b):
        a, b = b, a
    b_rows: Dict[int, list] = defaultdict(list)
    for (d, r2), v in b._terms.items():
        b_rows[d].append((r2, v))
    acc: Dict[Key, Coefficient] = defaultdict(int)
    for (d1, s1), v1 in a._terms.items():
        for d2, row in b_rows.items():
            d = d1 + d2
            if d >= prec:
                continue
            for s2, v2 in row:
                acc[(d, s1 + s2)] += v1 * v2
    return QYSeries(acc, q_prec=prec, q_min=a.q_min + b.q_min, y_window=out_window)


def power(a: QYSeries, k: int) -> QYSeries:
    if k < 0:
        raise ValueError("negative powers: use invert_q_unit")
    if k == 0:
        return QYSeries.constant(1, q_prec=a.q_prec)
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def invert_q_unit(a: QYSeries) -> QYSeries:
    """Inverse of a ``y``-free series with nonzero leading coefficient."""
    if not a.is_y_free():
        raise NotInvertible("series depends on y")
    v = a.valuation()
    if v is None:
        raise NotInvertible("zero series")
    n = a.q_prec - v  # number of exact coefficients from the leading one on
    src = [Fraction(a._terms.get((v + i, 0), 0)) for i in range(n)]
    lead = src[0]
    inv = [Fraction(0)] * n
    inv[0] = 1 / lead
    for i in range(1, n):
        s = sum(src[j] * inv[i - j] for j in range(1, i + 1))
        inv[i] = -s / lead
    return QYSeries.from_q_coefficients(inv, q_min=-v, q_prec=-v + n)


def dy(a: QYSeries) -> QYSeries:
    """``y d/dy``: multiply the ``(d, r)`` coefficient by ``r``."""
    return QYSeries({(d, r2): v * Fraction(r2, 2) for (d, r2), v in a._terms.items()},
                    a.q_prec, a.q_min, a.y_window)


def dq(a: QYSeries) -> QYSeries:
    """``q d/dq``: multiply the ``(d, r)`` coefficient by ``d``."""
    return QYSeries({(d, r2): v * d for (d, r2), v in a._terms.items()},
                    a.q_prec, a.q_min, a.y_window)


def heat(m: int, a: QYSeries) -> QYSeries:
    """Heat operator ``2 q d/dq - (1/2m) (y d/dy)^2``."""
    if m < 1:
        raise ValueError("heat operator needs index m >= 1")
    return add(scale(dq(a), 2), scale(dy(dy(a)), Fraction(-1, 2 * m)))


def coeff_at(a: QYSeries, d: int, r2: int) -> Fraction:
    if not (a.q_min <= d < a.q_prec):
        if d < a.q_min:
            return Fraction(0)
        raise PrecisionExceeded(f"q^{d} is beyond precision q^{a.q_prec}")
    if a.y_window is not None and abs(Fraction(r2, 2)) > a.y_window:
        raise WindowExceeded(f"y^{Fraction(r2, 2)} is outside window {a.y_window}")
    return Fraction(a._terms.get((d, r2), 0))
