"""Uniruled-divisor criterion for primitive classes on K3^[n]-type varieties.

A primitive curve class is recorded by its invariants (``BetaClass``): the
dimension parameter ``n``, the rational norm ``(beta, beta)`` and the residue
set in ``Z/(2n-2)``.  The class sweeps out a uniruled divisor exactly when the
coefficient ``(phi^(n-1) / Delta)_beta`` is positive; all coefficients of that
series are nonnegative, so the decision is ``multiplicity > 0``.

The same positivity also has a combinatorial form, a decomposition

    norm = -2 + sum 2 d_i - (sum r_i)^2 / (2n - 2),   ±[beta] = ±[sum r_i]

with every ``2 d_i - r_i^2 / 2 >= 0``.  :func:`search_witness` looks for one by
bounded enumeration; it is a cross-check, not a decision procedure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .jacobi import (
    InadmissiblePair,
    ResidueSet,
    invariant,
    jcoeff,
    locate,
    named_form,
)
from .qseries import DEFAULT_QPREC, as_rational, coeff_at


class ZeroNormUnsupported(ValueError):
    pass


@dataclass(frozen=True)
class BetaClass:
    n: int
    norm: Fraction
    residue: ResidueSet

    @classmethod
    def make(cls, n: int, norm, residue=0) -> "BetaClass":
        """Build and validate; ``residue`` is an int or an existing ResidueSet."""
        if n < 1:
            raise ValueError("n must be at least 1")
        norm = as_rational(norm)
        modulus = 2 * n - 2
        if n >= 2 and modulus % norm.denominator:
            raise InadmissiblePair(
                f"denominator of {norm} does not divide 2n-2 = {modulus}")
        if isinstance(residue, ResidueSet):
            if residue.modulus != modulus:
                raise InadmissiblePair(f"residue modulus must be {modulus}")
            rho = residue
        else:
            rho = ResidueSet.of(int(residue), modulus)
        beta = cls(n, norm, rho)
        beta.locate()  # raises InadmissiblePair
        return beta

    @property
    def index(self) -> int:
        return self.n - 1

    def locate(self) -> Tuple[int, int]:
        return locate(self.norm, self.residue, self.index)

    def __str__(self) -> str:
        return f"K3^[{self.n}], (beta,beta) = {self.norm}, {self.residue}"


@dataclass(frozen=True)
class Decision:
    exists: bool
    multiplicity: Fraction


@dataclass(frozen=True)
class Witness:
    pairs: Tuple[Tuple[int, int], ...]  # (d_i, r_i)

    def norm(self, n: int) -> Fraction:
        total_r = sum(r for _, r in self.pairs)
        return -2 + sum(2 * d for d, _ in self.pairs) - Fraction(total_r ** 2, 2 * n - 2)

    def residue_sum(self) -> int:
        return sum(r for _, r in self.pairs)

    def is_valid(self) -> bool:
        return all(8 * d - 2 * r * r >= 0 for d, r in self.pairs)


def _precision_for(d: int) -> int:
    return max(DEFAULT_QPREC, d + 2)


def multiplicity(beta: BetaClass) -> Fraction:
    """Coefficient ``N_beta`` in ``ev_*[M_{0,1}(X, beta)] = N_beta h``."""
    d, _ = beta.locate()
    form = named_form("phi_pow_over_delta", _precision_for(d), beta.n)
    return jcoeff(form, beta.norm, beta.residue)


def decide_uniruled(beta: BetaClass) -> Decision:
    mult = multiplicity(beta)
    return Decision(mult > 0, mult)


def search_witness(beta: BetaClass, r_bound: int, d_bound: int) -> Optional[Witness]:
    """Bounded search for a decomposition; ``None`` proves nothing."""
    if r_bound < 0 or d_bound < 0:
        raise ValueError("bounds must be nonnegative")
    k = beta.n - 1
    if k == 0:
        return Witness(()) if beta.norm == -2 else None
    modulus = 2 * beta.n - 2
    candidates = itertools.combinations_with_replacement(range(-r_bound, r_bound + 1), k)
    ranked = sorted(candidates, key=lambda rs: (sum(abs(r) for r in rs), sum(r < 0 for r in rs), rs))
    for rs in ranked:
        total = sum(rs)
        if total not in beta.residue:
            continue
        T = beta.norm + 2 + Fraction(total * total, modulus)
        if T.denominator != 1 or T.numerator % 2:
            continue
        need = [-(-r * r // 4) for r in rs]  # ceil(r^2 / 4)
        budget = T.numerator // 2
        if budget < sum(need) or any(x > d_bound for x in need):
            continue
        ds = list(need)
        extra = budget - sum(need)
        for i in range(k):
            step = min(extra, d_bound - ds[i])
            ds[i] += step
            extra -= step
        if extra:
            continue
        pairs = tuple(sorted(zip(ds, rs), key=lambda p: (p[1], p[0])))
        return Witness(pairs)
    return None


def eigenvalues(beta: BetaClass) -> Tuple[Fraction, Fraction]:
    """Nonzero eigenvalues of the Gromov-Witten correspondence on K3^[2]."""
    if beta.n != 2:
        raise ValueError("eigenvalues are only available for n = 2")
    if beta.norm == 0:
        raise ZeroNormUnsupported("the correspondence is not diagonalizable at norm 0")
    d, _ = beta.locate()
    prec = _precision_for(d)
    f = jcoeff(named_form("f", prec), beta.norm, beta.residue)
    g = jcoeff(named_form("g", prec), beta.norm, beta.residue)
    return beta.norm * f, beta.norm * g


def psi_identity_defect(q_prec: int = 8) -> Dict[Tuple[int, int], Fraction]:
    """Nonzero terms of ``25 g - 48 f - 12 H_1(Theta^2 / Delta)`` below ``q^q_prec``."""
    from .qseries import add, heat, scale

    if q_prec < 3:
        raise ValueError("precision must be at least 3")
    g = named_form("g", q_prec).series
    f = named_form("f", q_prec).series
    t2d = named_form("theta2_over_delta", q_prec).series
    diff = add(scale(g, 25), scale(add(scale(f, 48), scale(heat(1, t2d), 12)), -1))
    return dict(diff.items())


def verify_psi_identity(q_prec: int = 8) -> bool:
    return not psi_identity_defect(q_prec)


@dataclass
class SweepReport:
    max_d: int
    norm_cutoff: Fraction
    checked: Dict[int, int] = field(default_factory=dict)
    zeros: Dict[int, List[Tuple[int, int, Fraction]]] = field(default_factory=dict)
    n8_zero: Optional[Tuple[int, int, Fraction]] = None
    n8_value: Optional[Fraction] = None

    @property
    def positive_norm_zeros(self) -> Dict[int, List[Tuple[int, int, Fraction]]]:
        return {n: [z for z in zs if z[2] > 0] for n, zs in self.zeros.items()}

    def lines(self) -> List[str]:
        out = [f"norm cutoff {self.norm_cutoff} (conservative; the geometric claim concerns ample classes)"]
        for n in sorted(self.checked):
            zs = self.zeros.get(n, [])
            if zs:
                shown = ", ".join(f"(d={d}, r={r}, norm={D})" for d, r, D in zs)
                out.append(f"n={n}: {self.checked[n]} coefficients, {len(zs)} zero: {shown}")
            else:
                out.append(f"n={n}: {self.checked[n]} coefficients, all positive")
        if self.n8_zero is not None:
            d, r, D = self.n8_zero
            out.append(f"n=8: coefficient at (d={d}, r={r}, norm={D}) = {self.n8_value}")
        return out


def n_leq_7_sweep(max_d: int = 6, norm_cutoff=-2) -> SweepReport:
    """Scan ``phi^(n-1)/Delta`` for n = 2..7 at ``-1 <= d <= max_d``, ``|r| <= n-1``."""
    if max_d < 2:
        raise ValueError("max_d must be at least 2")
    report = SweepReport(max_d, as_rational(norm_cutoff))
    for n in range(2, 8):
        m = n - 1
        s = named_form("phi_pow_over_delta", _precision_for(max_d), n).series
        report.checked[n] = 0
        zeros = []
        for d in range(-1, max_d + 1):
            for r in range(-m, m + 1):
                D = invariant(d, 2 * r, m)
                if D < report.norm_cutoff:
                    continue
                report.checked[n] += 1
                if coeff_at(s, d, 2 * r) == 0:
                    zeros.append((d, r, D))
        report.zeros[n] = zeros
    beta8 = BetaClass.make(8, Fraction(3, 14), 5)
    d, r = beta8.locate()
    report.n8_zero = (d, r, beta8.norm)
    report.n8_value = multiplicity(beta8)
    return report


def admissible_classes(n: int, max_norm, min_d: int = -2) -> List[BetaClass]:
    """All (norm, ±residue) classes with ``q``-order at least ``min_d`` and norm <= max_norm."""
    max_norm = as_rational(max_norm)
    m = n - 1
    out = []
    if m == 0:
        for d in range(min_d, int(max_norm // 2) + 1):
            out.append(BetaClass.make(1, 2 * d, 0))
        return out
    for rho in range(0, m + 1):
        d = min_d
        while True:
            D = invariant(d, 2 * rho, m)
            if D > max_norm:
                break
            out.append(BetaClass.make(n, D, rho))
            d += 1
    return sorted(out, key=lambda b: (b.norm, b.residue.representative()))


def witness_disagreements(n_values=(2, 3, 4), max_norm=10, r_bound: int = 6,
                          d_bound: int = 12) -> List[Tuple[BetaClass, bool, Optional[Witness]]]:
    """Classes where the bounded witness search and the series decision differ."""
    bad = []
    for n in n_values:
        for beta in admissible_classes(n, max_norm):
            decision = decide_uniruled(beta)
            w = search_witness(beta, r_bound, d_bound)
            if (w is not None) != decision.exists:
                bad.append((beta, decision.exists, w))
    return bad


def table_norms(max_norm=6, min_norm=Fraction(-5, 2)) -> List[Fraction]:
    """Admissible K3^[2] norms ``2d`` and ``2d - 1/2`` in increasing order."""
    max_norm, min_norm = as_rational(max_norm), as_rational(min_norm)
    lo, hi = math.floor(2 * min_norm), math.ceil(2 * max_norm)
    out = []
    for k in range(lo, hi + 1):
        D = Fraction(k, 2)
        if min_norm <= D <= max_norm and D % 2 in (0, Fraction(3, 2)):
            out.append(D)
    return sorted(out)


def residue_for_k3_2(norm) -> int:
    """For n = 2 the norm fixes the residue: 1 if the norm is half-odd, else 0."""
    return 1 if as_rational(norm).denominator == 2 else 0
