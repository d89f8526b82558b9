from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hkcurves.fano import (
    DegreeMismatch,
    FanoPoly,
    GrClass,
    ClosedFormMismatch,
    PBClass,
    chern_tools,
    consistency_web,
    eigenvalue_chain,
    fano_checks,
    fano_integrate,
    gr_integrate,
    h3_relation,
    sprime_numbers,
    pieri_mul,
    sprime_class,
)
from hkcurves.fano import bundle
from hkcurves.fano.bundle import SPRIME_DISPLAY, check_h3_relation, p1_pushforward
from hkcurves.fano.chern import chern_class
from hkcurves.fano.verify import markman_class, pairing_determinant

H, c = FanoPoly.H(), FanoPoly.c()
s1 = GrClass.sigma(1)


# -- Grassmannian ---------------------------------------------------------------

def test_schubert_numbers():
    assert gr_integrate(s1 ** 8) == 14
    assert gr_integrate(GrClass.sigma(1, 1) ** 4) == 1
    assert gr_integrate(GrClass.sigma(4) ** 2) == 1
    assert gr_integrate(GrClass.sigma(4) * GrClass.sigma(3)) == 0


def test_pieri_row():
    assert pieri_mul(GrClass.sigma(2, 1), s1) == GrClass.sigma(3, 1) + GrClass.sigma(2, 2)
    assert GrClass.sigma(4) * s1 == GrClass.sigma(4, 1)   # no room past width 4


schubert = st.builds(
    lambda terms: GrClass(terms),
    st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda p: p[0] >= p[1]),
        st.integers(-3, 3),
        max_size=4,
    ),
)


@settings(max_examples=50, deadline=None)
@given(schubert, schubert, schubert)
def test_schubert_ring_laws(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


# -- Fano variety -----------------------------------------------------------------

def test_fano_intersection_numbers():
    assert fano_integrate(H ** 4) == 108
    assert fano_integrate(H ** 2 * c) == 45
    assert fano_integrate(c ** 2) == 27
    assert pairing_determinant() == 891


def test_fano_integrate_rejects_wrong_degree():
    with pytest.raises(DegreeMismatch):
        fano_integrate(H ** 3)


def test_tangent_bundle():
    t = chern_tools()["T_F"]
    assert chern_class(t, 0) == FanoPoly.const(1)
    assert chern_class(t, 1) == FanoPoly()
    assert 5 * H ** 2 - chern_class(t, 2) == 8 * c
    # F is deformation equivalent to K3^[2]: Euler number 324, c2^2 = 828
    assert fano_integrate(chern_class(t, 4)) == 324
    assert fano_integrate(chern_class(t, 2) ** 2) == 828


def test_tautological_sequence():
    tools = chern_tools()
    assert chern_class(tools["U*"], 1) == H and chern_class(tools["U*"], 2) == c
    prod = tools["Q"] * (1 - H + c)   # c(Q) c(U) = 1
    assert all(prod.part(k) == FanoPoly() for k in range(1, 5))


def test_sym2_chern_classes():
    total = chern_tools()["Sym2U"]
    assert chern_class(total, 1) == -3 * H
    assert chern_class(total, 2) == 2 * H ** 2 + 4 * c
    assert chern_class(total, 3) == -4 * H * c


def test_numerical_normal_form():
    assert (H * c).numerically_equal(Fraction(5, 12) * H ** 3)
    assert (c ** 2).numerically_equal(Fraction(1, 4) * H ** 4)
    assert not c.numerically_equal(Fraction(5, 12) * H ** 2)


def test_h3_relation():
    u2, u1, u0 = h3_relation()
    assert u2 == 3 * H and u1 == -(2 * H ** 2 + 4 * c)
    assert u0 == 4 * H * c
    assert u0.numerically_equal(Fraction(5, 3) * H ** 3)
    assert check_h3_relation()


def test_projective_bundle_pushforward():
    h = PBClass.h()
    assert (h ** 2).pushforward() == FanoPoly.const(1)
    assert (h ** 3).pushforward() == 3 * H
    assert PBClass.pullback(H).pushforward() == FanoPoly()


def test_sprime_matches_display():
    s = sprime_class()
    for got, want in zip(s.coeffs, SPRIME_DISPLAY):
        assert got.numerically_equal(want)


def test_sprime_mismatch_raises(monkeypatch):
    wrong = (SPRIME_DISPLAY[0], SPRIME_DISPLAY[1], 5 * H ** 2)
    monkeypatch.setattr(bundle, "SPRIME_DISPLAY", wrong)
    with pytest.raises(ClosedFormMismatch):
        sprime_class()
    assert isinstance(sprime_class(check=False), PBClass)


def test_lemma_31():
    assert sprime_numbers() == (315, 315, 315)


def test_eigenvalue_chain():
    chain = eigenvalue_chain()
    assert (chain.pushforward, chain.n70875, chain.n42525, chain.n945) == (15, 70875, 42525, 945)


def test_p1_pushforward():
    # xi^2 pushes to -c1(N)
    assert p1_pushforward(0, 1, 3) == -3
    assert p1_pushforward(2, 0, 7) == 2


def test_markman_class():
    v = markman_class()
    assert v == 2 * c
    assert fano_integrate(v * v) == 48 * Fraction(3, 2) ** 2


def test_consistency_web_and_checks():
    assert all(ch.ok for ch in consistency_web())
    checks = fano_checks()
    assert all(ch.ok for ch in checks), [ch.line() for ch in checks if not ch.ok]
    assert any(ch.line() == "PASS  n945 = 945 (expected 945)" for ch in checks)


@settings(max_examples=40, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_fano_pairing_bilinear(a, b, x, y):
    u, w = a * H ** 2 + b * c, x * H ** 2 + y * c
    expected = 108 * a * x + 45 * (a * y + b * x) + 27 * b * y
    assert fano_integrate(u * w) == expected
