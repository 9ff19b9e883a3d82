from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rpqcalc import (
    ConfigurationError,
    ParameterDomainError,
    deformed_binomial,
    deformed_factorial,
    deformed_number,
    make_algebra,
    parse_algebra_config,
    powered,
    structure_consistency,
)
from rpqcalc.kernel import dump_algebra, generic_probe


def test_quesne_structure():
    s = make_algebra("Quesne", "1/2", "1/3")
    assert (s.eps1, s.eps2, s.kappa) == (Fraction(1, 2), Fraction(3), Fraction(3, 2))


def test_numbers_examples(js, ac):
    assert deformed_number(js, 2) == Fraction(5, 6)
    assert deformed_number(ac, 3) == Fraction(7, 4)
    assert deformed_number(js, -1) == -6


def test_number_zero(builtin):
    assert deformed_number(builtin, 0) == 0
    assert deformed_number(builtin, 1) == builtin.kappa  # 3/2 for Quesne


def test_factorial_and_binomial(js, ac):
    assert deformed_factorial(ac, 3) == Fraction(21, 8)
    assert deformed_factorial(js, 2) == Fraction(5, 6)
    assert deformed_binomial(ac, 4, 2) == Fraction(35, 16)
    assert deformed_binomial(js, 5, 0) == 1
    assert deformed_binomial(js, 4, 4) == 1


def test_structure_consistency(builtin):
    assert all(r.passed for r in structure_consistency(builtin, range(-10, 11)))


def test_domain_errors():
    with pytest.raises(ParameterDomainError):
        make_algebra("JS", "1/3", "1/2")
    with pytest.raises(ParameterDomainError):
        make_algebra("AC", None, "3/2")
    with pytest.raises(ParameterDomainError):
        make_algebra("JS", "1/2", "1/3", tau="-1")
    with pytest.raises(ConfigurationError):
        make_algebra("Bogus", "1/2", "1/3")
    with pytest.raises(ConfigurationError):
        make_algebra("GenericR", "1/2", "1/3")


def test_generic_matches_js():
    g = make_algebra("GenericR", "1/2", "1/3", r_expr="(x - y)/(p - q)")
    js = make_algebra("JS", "1/2", "1/3")
    for n in range(-4, 6):
        assert deformed_number(g, n) == deformed_number(js, n)
    probe = generic_probe(g, range(1, 5))
    assert probe


def test_config_roundtrip(builtin):
    again = parse_algebra_config(dump_algebra(builtin))
    assert again.digest() == builtin.digest()


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigurationError):
        parse_algebra_config("kind = JS\np = 1/2\nq = 1/3\ncolour = red\n")


def test_powered_numbers(builtin):
    sq = powered(builtin, 2)
    for n in range(-3, 4):
        # [n]_(a) is R at (p^(an), q^(an)); eps-form with eps^a
        assert sq.eps1 == builtin.eps1**2 and sq.eps2 == builtin.eps2**2
        assert deformed_number(sq, n) == sq.kappa * (sq.eps1**n - sq.eps2**n) / (sq.eps1 - sq.eps2)


fractions = st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20), max_denominator=40)


@settings(max_examples=60, deadline=None)
@given(p=fractions, q=fractions, n=st.integers(-8, 8))
def test_js_number_is_eps_form(p, q, n):
    if not q < p:
        p, q = q, p
    if p == q:
        return
    s = make_algebra("JS", p, q)
    assert deformed_number(s, n) == (p**n - q**n) / (p - q)
    assert deformed_number(s, -n) == -((p * q) ** (-n)) * deformed_number(s, n)
