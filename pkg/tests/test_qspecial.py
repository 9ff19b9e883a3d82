from fractions import Fraction

import mpmath
import pytest

from rpqcalc import DivergenceError, ParameterDomainError, make_algebra
from rpqcalc.laurent import LaurentPoly
from rpqcalc.opcalc import build_derivative
from rpqcalc.qspecial import (
    elliptic_gamma,
    gaussian_density,
    jackson_integral,
    jackson_monomial,
    pochhammer,
    pochhammer_ratio_check,
    theta,
    to_mp,
)


def test_finite_pochhammer(js):
    assert pochhammer(2, 1, js, 0).exact == 1
    assert pochhammer(2, Fraction(1, 3), js, 1).exact == 2 - Fraction(1, 3)
    r = js.q / js.p
    assert pochhammer(2, 1, js, 3).exact == (2 - 1) * (2 - r) * (2 - r * r)


def test_ratio_identity_example(js):
    chk = pochhammer_ratio_check(2, 1, js, 3, K=200)
    assert chk["rel_error"] < 1e-10


def test_infinite_product_u_zero_is_plain(js):
    v = pochhammer(0, Fraction(1, 2), js, "inf", K=40)
    r = mpmath.mpf(2) / 3
    want = mpmath.fprod(-(r**j) / 2 for j in range(40))
    assert abs(v.value - want) <= abs(want) * mpmath.mpf(10) ** -25
    assert v.u_power == 0


def test_divergent_ratio():
    s = make_algebra("JS", "1/2", "1/3")
    with pytest.raises(DivergenceError):
        theta(Fraction(1, 2), Fraction(1, 3), Fraction(3, 2))
    with pytest.raises(ParameterDomainError):
        pochhammer(2, 1, s, -1)


def test_theta_symmetry_and_convergence():
    u, z, w = Fraction(1, 2), Fraction(1, 3), Fraction(9, 10)
    a = theta(u, z, w, K=100)
    b = theta(u, w / z, w, K=100)
    assert abs(a.value - b.value) <= mpmath.mpf(10) ** -25
    # the w = 9/10 tail at K = 100 is ~3e-5; doubling K lands inside it
    c = theta(u, z, w, K=200)
    assert abs(c.value - a.value) <= a.tail_bound
    small = theta(u, z, Fraction(1, 2), K=100)
    assert abs(theta(u, z, Fraction(1, 2), K=200).value - small.value) < 1e-12


def test_theta_u_zero_finite():
    v1 = theta(0, Fraction(1, 2), Fraction(1, 2), K=30)
    v2 = theta(0, Fraction(1, 2), Fraction(1, 2), K=30)
    assert v1.value == v2.value and mpmath.isfinite(v1.value)


def test_gamma_identical_grids_is_one(js):
    w = Fraction(1, 5)
    z = mpmath.sqrt(to_mp(js.q) * to_mp(w))  # z = q w / z
    g = elliptic_gamma(Fraction(1, 2), z, w, js, K=60)
    assert abs(g.value - 1) < 1e-20


def test_gamma_recomposition(js):
    g = elliptic_gamma(Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), js, K=150)
    assert g.recomposition_error() < 1e-10


def test_gamma_pq_specialization():
    # the (p, q) gamma is the same ratio evaluated with the JS grid q/p
    s = make_algebra("JS", "3/5", "1/4")
    u, z, w = Fraction(1, 2), Fraction(2, 7), Fraction(1, 3)
    r = mpmath.mpf(1) / 4 / (mpmath.mpf(3) / 5)

    def prod(x):
        return mpmath.fprod(1 - r**j * w**k * x / u for j in range(80) for k in range(80))

    direct = prod(mpmath.mpf(1) / 4 * w / z) / prod(z)
    assert abs(elliptic_gamma(u, z, w, s, K=80).value - direct) < 1e-20


def test_density(js):
    assert gaussian_density(0, 1, 1, js).value == 1
    assert gaussian_density(Fraction(1, 2), 2, 1, js).value == gaussian_density(Fraction(-1, 2), 2, 1, js).value
    a = gaussian_density(Fraction(1, 2), 2, 1, js, K=200).value
    b = gaussian_density(Fraction(1, 2), 2, 1, js, K=400).value
    assert abs(a - b) < 1e-12


def test_jackson_examples(js):
    z = LaurentPoly.monomial
    assert jackson_integral(z(1), 1, js).value == 0
    v = jackson_integral(z(2), 1, js)
    assert v.exact == Fraction(72, 19)
    assert abs(v.value - to_mp(Fraction(72, 19))) < 1e-20
    with pytest.raises(DivergenceError):
        jackson_integral(z(-2), 1, js)


def test_jackson_one_sided(js):
    for n in range(9):
        v = jackson_integral(LaurentPoly.monomial(n), 1, js, one_sided=True)
        assert v.exact == jackson_monomial(n, 1, js, one_sided=True)
        assert abs(v.value - to_mp(v.exact)) < 1e-12


def test_jackson_inverts_derivative(js):
    # one-sided sum of D g equals g(xi) - g(0) for a polynomial g (p^k, q^k grids telescope)
    g = LaurentPoly.from_text("1 + 3*z^2 - 1/2*z^5")
    Dg = build_derivative(js).apply(g)
    v = jackson_integral(Dg, 1, js, K=300, one_sided=True)
    assert v.exact == g.evaluate(1) - g.evaluate(0)


def test_callable_matches_laurent(js):
    f = LaurentPoly.from_text("z^2 + z^4")
    a = jackson_integral(f, Fraction(1, 2), js, K=300)
    b = jackson_integral(lambda x: x**2 + x**4, Fraction(1, 2), js, K=300)
    assert abs(a.value - b.value) < 1e-20


def test_tail_bound_survives_below_working_precision(js):
    # omitted factors ~ (2/3)^200 sit far below 30 digits; the bound must not round to 0
    v = pochhammer(2, Fraction(1, 5), js, "inf", K=200)
    assert 0 < v.tail_bound < mpmath.mpf(10) ** -30
    g = elliptic_gamma(2, Fraction(1, 5), Fraction(1, 3), js, K=60)
    assert g.tail_bound > 0
