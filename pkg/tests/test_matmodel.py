import random
from fractions import Fraction
from math import factorial

import mpmath
import pytest

from rpqcalc import ShapeError, SizeError, deformed_number, make_algebra
from rpqcalc.combinat import bell_complete
from rpqcalc.laurent import MultiLaurent
from rpqcalc.matmodel import (
    ZD_TAG,
    EnsembleConfig,
    TruncatedSeries,
    bell_series,
    build_expanded_T,
    build_matrix_T,
    build_toy_I,
    build_toy_T,
    check_matrix_commutator,
    chi,
    dn_operator,
    dn_polynomial,
    moment_closed,
    moment_quadrature,
    moment_series,
    normalization_certificate,
    partition_eigenvalue,
    partition_nested,
    toy_annihilation_scan,
)


# ---------------------------------------------------------------- series


def test_series_cap_and_order_independence():
    rng = random.Random(3)
    a = TruncatedSeries.random(3, 4, rng)
    b = TruncatedSeries.random(3, 4, rng)
    assert a * b == b * a
    assert all(sum(k) <= 4 for k, _ in (a * b).items())
    with pytest.raises(ShapeError):
        a + TruncatedSeries.zero(3, 5)


def test_bell_series_matches_combinat():
    K, cap = 4, 4
    bs = bell_series(4, K, cap)
    tab = bell_complete(4)
    for l in range(5):
        for idx, c in bs[l].items():
            assert tab[l].coeff(tuple(idx) + (0,) * (tab.arity - K)) == c
        assert len(bs[l]) == len(list(tab[l].items()))


# ---------------------------------------------------------------- ensemble


def test_moment_normalization_and_parity(js):
    cfg = EnsembleConfig(js, u=2)
    assert moment_quadrature(cfg, 0).value == 1
    assert moment_quadrature(cfg, 3).value == 0
    assert moment_closed(cfg, 3).value == 0


def test_moment_closed_instantiation(js):
    cfg = EnsembleConfig(js, u=2)
    assert moment_closed(cfg, 2).exact == Fraction(2, 3)
    assert moment_closed(cfg, 0).exact == Fraction(1, 2)  # the normalization mismatch


def test_moment_series_oracle(js):
    cfg = EnsembleConfig(js, u=2)
    for k in (2, 4, 6):
        q, s = moment_quadrature(cfg, k).value, moment_series(cfg, k).value
        assert abs(q - s) <= abs(q) * mpmath.mpf(10) ** -20


def test_certificate_outcome_is_deterministic(js):
    cfg = EnsembleConfig(js, u=2)
    a = normalization_certificate([cfg]).to_json()
    b = normalization_certificate([cfg]).to_json()
    assert a == b and a["outcome"] in ("agree", "constant-factor", "neither")


def test_one_parameter_unit_u_is_constant_factor(ac):
    cert = normalization_certificate([EnsembleConfig(ac, u=1)])
    assert cert.outcome == "constant-factor"
    assert abs(cert.factors[0] - 2) < 1e-8


def test_partition_free_is_normalization(js):
    cfg = EnsembleConfig(js, u=2, K=200)
    z0 = partition_eigenvalue(cfg, {})
    from rpqcalc.matmodel.ensemble import _one_dim_moment

    assert abs(z0.value - _one_dim_moment(cfg, 0)) < 1e-25


def test_partition_p2_series(js):
    cfg = EnsembleConfig(js, u=2, K=200)
    p2, cap = Fraction(1, 3), 5
    ratio = partition_eigenvalue(cfg, {2: p2}, cap).value / partition_eigenvalue(cfg, {}, cap).value
    series = mpmath.fsum(
        (mpmath.mpf(p2.numerator) / p2.denominator / 2) ** m * moment_quadrature(cfg, 2 * m).value / factorial(m)
        for m in range(cap + 1)
    )
    assert abs(ratio - series) < 1e-20


def test_partition_n2_stable_and_nested(js):
    cfg = EnsembleConfig(js, N=2, u=2, K=60)
    a = partition_eigenvalue(cfg, {2: Fraction(1, 4)}, 3)
    b = partition_eigenvalue(EnsembleConfig(js, N=2, u=2, K=120), {2: Fraction(1, 4)}, 3)
    assert abs(a.value - b.value) <= a.tail_bound + abs(a.value) * mpmath.mpf(10) ** -25
    nested = partition_nested(cfg, {2: Fraction(1, 4)}, 3, K_grid=60)
    assert abs(nested.value - a.value) <= abs(a.value) * mpmath.mpf(10) ** -20


def test_ensemble_guards(js):
    with pytest.raises(SizeError):
        EnsembleConfig(js, N=5)
    with pytest.raises(SizeError):
        partition_nested(EnsembleConfig(js, N=3, K=200), {}, 2)


# ---------------------------------------------------------------- matrix operators


def test_matrix_T_examples(js):
    n = lambda k: deformed_number(js, k)  # noqa: E731
    T = build_matrix_T(js, 2, 1)
    assert T(MultiLaurent.monomial((3,))) == MultiLaurent.monomial((5,), -n(6))
    T0 = build_matrix_T(js, 0, 2)
    assert T0(MultiLaurent.monomial((1, 1))) == MultiLaurent.monomial((1, 1), -2 * n(2))
    Tm = build_matrix_T(js, -3, 2)
    out = Tm(MultiLaurent.constant(1, 2))
    assert out == MultiLaurent.monomial((-3, 0), -n(-2)) + MultiLaurent.monomial((0, -3), -n(-2))


def test_chi_example(js):
    assert chi(js, 1, 0) == 1 / (deformed_number(js, 2) - js.p * js.q)


def test_matrix_commutator_reports(js):
    same = check_matrix_commutator(js, 2, 2, 1)
    assert same.verdict == "exact-pass"
    rep = check_matrix_commutator(js, 1, 0, 1, range(-3, 4))
    assert rep.probes == 7
    assert rep.residuals and rep.solved_closes  # the displayed constants do not close, the solve does
    assert rep.verdict == "logged-discrepancy"
    shifted = check_matrix_commutator(js, 1, 0, 1, range(-3, 4), "shifted")
    assert shifted.verdict == "logged-discrepancy"


# ---------------------------------------------------------------- constraint operators


def test_dn_polynomial_n2():
    assert dn_polynomial(2) == {(2, 0): Fraction(1, 2), (0, 1): Fraction(-1, 2)}


def test_dn_operator_n1():
    op = dn_operator(1, 2, 5, 2)
    assert len(op.terms) == 1 and op.terms[0].derivs == (0, 0, 0, 1, 0)
    assert op.terms[0].coeff == TruncatedSeries.one(5, 2, factorial(4))


def test_expanded_T_constant_and_linearity(js):
    op = build_expanded_T(js, 1, 1, 6, 3)
    assert op(TruncatedSeries.one(6, 3)).is_zero()
    rng = random.Random(5)
    f, g = TruncatedSeries.random(6, 3, rng), TruncatedSeries.random(6, 3, rng)
    alpha = Fraction(-3, 7)
    lhs = op(f.scale(alpha) + g).total()
    rhs = op(f).total().scale(alpha) + op(g).total()
    assert lhs == rhs


def test_toy_I_on_t3():
    s = make_algebra("JS", "1/2", "1/3", tau="1/6")
    op = build_toy_I(s, 1, 2, 0, 4, 3)
    img = op(TruncatedSeries.variable(3, 4, 3)).total()
    # (3!/1!) B_1(t^) tau^3 with B_1 = (eps1 - eps2) t_1
    assert img == TruncatedSeries.variable(1, 4, 3).scale(6 * (s.eps1 - s.eps2) * s.tau**3)


def test_toy_I_kills_constants(js):
    assert build_toy_I(js, 1, 1, 0, 4, 3)(TruncatedSeries.one(4, 3)).is_zero()


def test_toy_T_tag_is_formal(js):
    op = build_toy_T(js, 1, 1, 0, 4, 3)
    assert ZD_TAG in op.tags()


def test_toy_bm_specialization():
    # one engine: the BM spec's numbers are the symmetric q-numbers
    q = Fraction(1, 2)
    s = make_algebra("BM", None, q)
    for x in range(-3, 5):
        assert deformed_number(s, x) == (q**x - q**-x) / (q - 1 / q)
    assert build_toy_I(s, 1, 1, 0, 3, 2).terms


def test_scan_is_exploratory(js):
    rows = toy_annihilation_scan(js, 1, 1, 0, 3, [1, 2])
    assert [r.cap for r in rows] == [1, 2]


def test_partition_tail_bound_is_positive():
    cfg = EnsembleConfig(make_algebra("JS", "3/4", "1/2"), u=Fraction(3, 2))
    z = partition_eigenvalue(cfg, {2: Fraction(1, 4)}, cap=4)
    assert 0 < z.tail_bound < mpmath.mpf(10) ** -40
