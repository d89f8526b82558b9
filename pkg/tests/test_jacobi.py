from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkcurves.jacobi import (
    InadmissiblePair,
    JacobiElement,
    NAMED_FORMS,
    ResidueSet,
    bernoulli,
    delta,
    delta_from_eisenstein,
    eisenstein,
    invariant,
    is_admissible,
    jcoeff,
    lemma_violations,
    locate,
    named_form,
    phi,
    phi_via_convolution,
    positivity_violations,
    theta,
    theta_support_violations,
    wp_windowed,
)
from hkcurves.qseries import coeff_at, mul


def test_theta_leading_rows():
    t = theta(4)
    assert t.weight == -1 and t.index == Fraction(1, 2)
    assert t.series.q_row(0) == {1: 1, -1: 1}
    assert t.series.q_row(1) == {3: 1, 1: 3, -1: 3, -3: 1}


def test_theta_support():
    assert theta_support_violations(10) == []


def test_bernoulli_and_eisenstein():
    assert [bernoulli(k) for k in (2, 4, 6)] == [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)]
    e2 = eisenstein(2, 4).series
    e4 = eisenstein(4, 4).series
    e6 = eisenstein(6, 4).series
    assert [coeff_at(e2, d, 0) for d in range(4)] == [1, -24, -72, -96]
    assert [coeff_at(e4, d, 0) for d in range(4)] == [1, 240, 2160, 6720]
    assert [coeff_at(e6, d, 0) for d in range(4)] == [1, -504, -16632, -122976]


def test_delta_two_routes():
    assert delta(12).series == delta_from_eisenstein(12).series
    assert coeff_at(delta(12).series, 11, 0) == 534612


def test_phi_q0_row():
    assert phi(3).series.q_row(0) == {0: 1}


def test_phi_matches_convolution():
    assert phi(10).series == phi_via_convolution(10).series


def test_phi01_matches_windowed_wp():
    # 12 wp Theta^2 read directly; theta2 at Q = 6 reaches |r| = 4
    wp = wp_windowed(6, 8).series
    t2 = named_form("phi_m21", 6).series
    direct = mul(wp, t2) * 12
    assert direct.y_window == 4
    assert direct.agrees_with(named_form("phi_01", 6).series)


def test_g_leading_coefficient():
    g = named_form("g", 4).series
    assert coeff_at(g, -1, 2) == Fraction(-6, 5)
    assert coeff_at(g, -1, 0) == Fraction(12, 5) * 1 - Fraction(6, 5) * 2


def test_f_is_phi_over_delta():
    f = named_form("f", 6).series
    assert f.q_min == -1
    assert mul(f, delta(6).series).agrees_with(phi(6).series)


@pytest.mark.parametrize("name,m", [("phi_m21", 1), ("phi", 1), ("f", 1), ("g", 1)])
def test_well_defined(name, m):
    assert lemma_violations(named_form(name, 10)) == []


def test_well_defined_phi_squared():
    p = phi(10)
    assert lemma_violations(p * p) == []


@pytest.mark.parametrize("n", [3, 4, 5])
def test_well_defined_higher_index(n):
    assert lemma_violations(named_form("phi_pow_over_delta", 8, n)) == []


def test_positivity_characterization():
    assert positivity_violations(10) == []


def test_named_forms_cached_and_complete():
    for name in NAMED_FORMS:
        form = named_form(name, 5, 3)
        assert isinstance(form, JacobiElement)
        assert form.series.q_prec == 5
    assert named_form("f", 7) is named_form("f", 7)
    with pytest.raises(KeyError):
        named_form("nope", 5)


def test_weights():
    assert named_form("phi_m21", 4).weight == -2
    assert named_form("phi", 4).weight == 0
    assert named_form("phi_01", 4).index == 1
    assert named_form("delta", 4).weight == 12


def test_residue_sets():
    rho = ResidueSet.of(5, 14)
    assert rho.values == frozenset({5, 9})
    assert rho.representative() == 5
    assert 9 in rho and -5 in rho and 4 not in rho
    assert str(ResidueSet.of(3, 2)) == "±[1] mod 2"
    assert ResidueSet.of(7, 0).representative() == 0


def test_locate_examples():
    # norm 3/2 with residue 1 at index 1 sits at q^1 y^1
    assert locate(Fraction(3, 2), ResidueSet.of(1, 2), 1) == (1, 1)
    assert locate(Fraction(3, 14), ResidueSet.of(5, 14), 7) == (1, 5)
    assert locate(-2, ResidueSet.of(0, 0), 0) == (-1, 0)
    with pytest.raises(InadmissiblePair):
        locate(Fraction(1, 2), ResidueSet.of(1, 2), 1)
    with pytest.raises(InadmissiblePair):
        locate(1, ResidueSet.of(0, 4), 1)


def test_jcoeff_reads_table_value():
    assert jcoeff(named_form("f", 12), Fraction(3, 2), ResidueSet.of(1, 2)) == 120


@settings(max_examples=80, deadline=None)
@given(st.integers(-1, 5), st.integers(-6, 6), st.integers(1, 7))
def test_locate_inverts_invariant(d, r, m):
    D = invariant(d, 2 * r, m)
    rho = ResidueSet.of(r, 2 * m)
    assert is_admissible(D, rho, m)
    dd, rr = locate(D, rho, m)
    assert invariant(dd, 2 * rr, m) == D
    assert rr in rho and abs(rr) <= abs(r)


@settings(max_examples=60, deadline=None)
@given(st.integers(-1, 7), st.integers(-4, 4))
def test_f_coefficients_depend_on_invariants_only(d, r):
    f = named_form("f", 10).series
    D = invariant(d, 2 * r, 1)
    rho = ResidueSet.of(r, 2)
    assert jcoeff(named_form("f", 10), D, rho) == coeff_at(f, d, 2 * r)
