import random
from fractions import Fraction

import pytest

from rpqcalc import SizeError
from rpqcalc.combinat import (
    bell_complete,
    bell_from_exponential,
    bell_scaled_identity,
    dN_substitution,
    levi_civita,
    newton_product,
    permutation_sign,
)
from rpqcalc.laurent import MultiLaurent


def t(i, arity):
    return MultiLaurent.variable(i, arity)


def test_bell_small():
    B = bell_complete(3)
    ar = B.arity
    assert B[0] == MultiLaurent.constant(1, ar)
    assert B[2] == t(0, ar) * t(0, ar) + t(1, ar)
    assert B[3] == t(0, ar) ** 3 + t(0, ar) * t(1, ar) * 3 + t(2, ar)


def test_bell_vs_exponential():
    B, E = bell_complete(10), bell_from_exponential(10)
    assert all(B[l] == E[l] for l in range(11))
    assert B.weighted_degrees_ok()


def test_bell_guard():
    with pytest.raises(SizeError):
        bell_complete(50)


def test_scaled_identity_small():
    res = bell_scaled_identity(4, Fraction(1, 2))
    assert res["polynomial_identity"] and res["series_identity"]
    assert res["rows"][0].passed and res["rows"][1].passed


def test_levi_civita():
    assert levi_civita((1, 2), (1, 2)) == 1
    assert levi_civita((2, 1), (1, 2)) == -1
    assert levi_civita((1, 1), (1, 2)) == 0
    assert permutation_sign((1, 0, 2)) == -1


def test_newton_examples():
    assert newton_product([2, 3]) == (6, 6)
    assert newton_product([Fraction(5, 7)]) == (Fraction(5, 7),) * 2
    assert newton_product([0, 4, 1]) == (0, 0)
    assert dN_substitution([2]) == (4, 4)
    assert dN_substitution([1, 2]) == (4, 4)
    assert dN_substitution([1, 1, 1]) == (1, 1)


def test_newton_random():
    rng = random.Random(11)
    for _ in range(30):
        z = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 5))]
        a, b = newton_product(z)
        assert a == b
