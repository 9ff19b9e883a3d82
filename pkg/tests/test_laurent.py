import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from rpqcalc.laurent import LaurentPoly, MultiLaurent
from rpqcalc.linsolve import determinant, solve_exact

z = LaurentPoly.variable()


def test_difference_of_squares():
    assert (z + z**-1) * (z - z**-1) == z**2 - z**-2


def test_multivariate_product():
    a = MultiLaurent.monomial((1, 1))
    b = MultiLaurent.monomial((2, 0))
    assert a * b == MultiLaurent.monomial((3, 1))


def test_dilate_and_evaluate():
    p = Fraction(1, 2)
    assert (z**2).dilate(p) == LaurentPoly.monomial(2, p**2)
    assert (z**-1).dilate(Fraction(1, 3)) == LaurentPoly.monomial(-1, 3)
    assert (LaurentPoly.constant(3) + z).dilate(p) == LaurentPoly.constant(3) + z * p
    assert (z**2 + 1).evaluate(2) == 5
    assert (z**-1).evaluate(Fraction(1, 3)) == 3
    assert MultiLaurent.monomial((1, 2)).evaluate((2, 3)) == 18


def test_zero_identity():
    f = LaurentPoly.from_text("1/2*z^-3 + z")
    assert LaurentPoly() + f == f


def test_text_and_json_roundtrip():
    f = LaurentPoly.from_text("-3*z^-2 + 1/5 + z^4")
    assert LaurentPoly.from_json(f.to_json()) == f
    assert f.degrees() == [-2, 0, 4]


coeffs = st.dictionaries(st.integers(-4, 4), st.fractions(max_denominator=9, min_value=-5, max_value=5), max_size=5)


@settings(max_examples=80, deadline=None)
@given(a=coeffs, b=coeffs, seed=st.integers(0, 10**6))
def test_arithmetic_matches_pointwise(a, b, seed):
    A = sum((LaurentPoly.monomial(k, v) for k, v in a.items()), LaurentPoly())
    B = sum((LaurentPoly.monomial(k, v) for k, v in b.items()), LaurentPoly())
    rng = random.Random(seed)
    for _ in range(10):
        x = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
        assert (A + B).evaluate(x) == A.evaluate(x) + B.evaluate(x)
        assert (A * B).evaluate(x) == A.evaluate(x) * B.evaluate(x)


def test_solve_exact_unique_and_inconsistent():
    sol = solve_exact([[1, 1], [1, -1]], [3, 1])
    assert sol.unique and list(sol.particular) == [2, 1]
    assert solve_exact([[1, 1], [1, 1]], [1, 2]) is None
    line = solve_exact([[1, 1]], [2])
    assert not line.unique


def test_determinant():
    assert determinant([[Fraction(5), 1], [13, 5]]) == 12
