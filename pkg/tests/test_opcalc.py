from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rpqcalc import deformed_number, make_algebra
from rpqcalc.laurent import LaurentPoly
from rpqcalc.opcalc import (
    PAPER_ZM,
    SHIFTED,
    alpha_twist,
    bracket,
    build_derivative,
    build_I,
    build_L,
    central_terms,
    commutator,
    family_closure,
    jacobi_residual,
    displayed_coefficients,
    plain_jacobi_residual,
    q_case_display,
    verify_oscillator,
)

z = LaurentPoly.monomial


def test_derivative_examples(js, ac):
    assert build_derivative(ac).apply(z(3)) == z(2, Fraction(7, 4))
    assert build_derivative(js).apply(z(0)).is_zero()
    assert build_derivative(js).apply(z(-1)) == z(-2, -6)


def test_oscillator_all_builtin(builtin):
    checks = verify_oscillator(builtin, range(-5, 6))
    assert len(checks) == 4
    assert all(c.exact_zero() for c in checks)


def test_generators(js):
    assert build_L(js, 0, PAPER_ZM).apply(z(3)) == z(2, -deformed_number(js, 3))
    assert build_L(js, 1, SHIFTED).apply(z(2)) == z(3, -deformed_number(js, 2))
    assert build_L(js, -1, SHIFTED).apply(z(2)) == z(1, Fraction(-5, 6))
    assert build_I(js, 0).apply(z(4)) == z(4, -1)
    half = make_algebra("JS", "1/2", "1/3", tau="1/2")
    assert build_I(half, 2).apply(z(1)) == z(3, Fraction(-1, 4))


def test_commutator_on_z2(js):
    c = commutator(build_L(js, 1), build_L(js, 0))
    n = lambda k: deformed_number(js, k)  # noqa: E731
    assert c.apply(z(2)) == z(3, n(2) * n(2) - n(2) * n(3))
    assert c.apply(z(2)) == z(3, Fraction(55, 216))


def test_bracket_self_vanishes(js):
    L = build_L(js, 2)
    assert bracket(L, L, 3, 3).vanishes_on(range(-4, 5))


def test_displayed_coefficients(js):
    c = displayed_coefficients(js, 1, 0)
    assert c["Theta"] == 1
    assert c["x"] == js.q * js.p and c["y"] == js.p


def test_closure_structural_fail(js):
    res = family_closure(js, "LL", 2, 1, PAPER_ZM, range(-4, 5))
    assert res.verdict == "structural-fail"
    assert res.shifts[0] != res.shifts[2]


def test_closure_shifted_degreewise(js):
    res = family_closure(js, "LL", 2, 1, SHIFTED, range(-4, 5))
    assert res.structural_ok and res.degreewise_ok


def test_closure_li_needs_grade_factor(js):
    res = family_closure(js, "LI", 1, 2, SHIFTED, range(-4, 5))
    assert res.degreewise_ok
    assert res.grade_fit is not None


def test_central_examples(ac, builtin):
    assert central_terms(ac, 2).C_L == Fraction(7, 5)
    for m in (-1, 0, 1):
        assert central_terms(builtin, m).C_L == 0
    zero = central_terms(builtin, 0)
    assert zero.C_LI == 0 and zero.C_I == 0


@pytest.mark.parametrize("m", range(-4, 5))
def test_q_case_display_with_half_knob(ac, m):
    ours = central_terms(ac, m, C_L=Fraction(1, 2))
    disp = q_case_display(ac.q, m)
    assert (ours.C_L, ours.C_LI, ours.C_I) == (disp.C_L, disp.C_LI, disp.C_I)


def test_alpha_twist(builtin):
    for i in (1, 2, 3, -2):
        assert alpha_twist(builtin, i) == builtin.eps1**i + builtin.eps2**i


def test_jacobi_trivial_and_plain(js):
    fam = lambda k: build_L(js, k)  # noqa: E731
    assert jacobi_residual(js, 1, 1, 1, fam).vanishes_on(range(-3, 4))
    assert plain_jacobi_residual(2, 0, -1, fam).vanishes_on(range(-3, 4))


@settings(max_examples=30, deadline=None)
@given(m1=st.integers(-3, 3), m2=st.integers(-3, 3), x=st.fractions(max_denominator=7), y=st.fractions(max_denominator=7))
def test_bracket_swap_identity(m1, m2, x, y):
    js = make_algebra("JS", "1/2", "1/3")
    A, B = build_L(js, m1), build_I(js, m2)
    lhs = bracket(A, B, x, y)
    rhs = bracket(B, A, y, x).scale(-1)
    assert lhs.agrees_with(rhs, range(-4, 5))
