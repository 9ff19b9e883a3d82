"""Oscillator realization and the Heisenberg-Witt generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Tuple

from ..errors import ConfigurationError
from ..kernel import AlgebraSpec, deformed_number
from .grade import GradeFunction, number_grade
from .operators import GradedOperator, commutator, compose

PAPER_ZM = "paper_zm"
SHIFTED = "shifted_zm1"
CONVENTIONS = (PAPER_ZM, SHIFTED)


def build_derivative(spec: AlgebraSpec) -> GradedOperator:
    """``z^n -> [n] z^(n-1)``."""
    return GradedOperator({-1: number_grade(spec)}, "D")


def creation() -> GradedOperator:
    return GradedOperator({1: 1}, "A+")


def number_operator() -> GradedOperator:
    return GradedOperator({0: GradeFunction.degree()}, "N")


def number_of(spec: AlgebraSpec, shift: int = 0) -> GradedOperator:
    """The diagonal operator ``[N + shift]``."""
    return GradedOperator({0: number_grade(spec, shift)}, f"[N+{shift}]")


@dataclass(frozen=True)
class OscillatorCheck:
    name: str
    residual: GradedOperator
    degrees: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.residual.vanishes_on(self.degrees)

    def exact_zero(self) -> bool:
        """Whether the residual is the zero operator symbolically."""
        try:
            return self.residual.is_zero()
        except TypeError:
            return False


def verify_oscillator(spec: AlgebraSpec, degrees: Iterable[int]) -> list[OscillatorCheck]:
    """Check the four oscillator relations of ``A = D, A+ = z, N = z d/dz``."""
    degrees = tuple(degrees)
    A, Ad, N = build_derivative(spec), creation(), number_operator()
    rel = {
        "AA+ = [N+1]": compose(A, Ad) - number_of(spec, 1),
        "A+A = [N]": compose(Ad, A) - number_of(spec, 0),
        "[N,A] = -A": commutator(N, A) + A,
        "[N,A+] = A+": commutator(N, Ad) - Ad,
    }
    return [OscillatorCheck(k, v, degrees) for k, v in rel.items()]


def build_L(spec: AlgebraSpec, m: int, convention: str = SHIFTED) -> GradedOperator:
    """``L_m = -z^m D`` (paper_zm) or ``-z^(m+1) D`` (shifted_zm1)."""
    if convention == PAPER_ZM:
        s = m - 1
    elif convention == SHIFTED:
        s = m
    else:
        raise ConfigurationError(f"unknown L convention {convention!r}; use {CONVENTIONS}")
    return GradedOperator({s: -number_grade(spec)}, f"L_{m}")


def build_I(spec: AlgebraSpec, m: int) -> GradedOperator:
    """``I_m = -(tau z)^m``."""
    return GradedOperator({m: -(spec.tau**m)}, f"I_{m}")


def displayed_coefficients(spec: AlgebraSpec, m1: int, m2: int) -> Dict[str, Fraction | None]:
    """The displayed bracket coefficients ``x, y, u, v`` and ``Theta``.

    ``Theta`` is ``None`` when its denominator vanishes.
    """
    p, q, tau = spec.p, spec.q, spec.tau
    num = lambda n: deformed_number(spec, n)  # noqa: E731
    den = num(m1) - (p * q) ** (m1 - m2) * num(m2)
    theta = None if den == 0 else num(m1 - m2) / den
    out = {
        "Theta": theta,
        "x": None if theta is None else q ** (m1 - m2) * p**m1 * theta,
        "y": None if theta is None else p**m1 * theta,
        "u": tau**m1 * p**m2,
        "v": tau**m1 * (p * q) ** m2,
    }
    return out


def basis_product(spec: AlgebraSpec, m1: int, s1: int, m2: int, s2: int) -> Dict[Tuple[int, int], Fraction]:
    """Product in the non-associative basis ``z^m D^s``.

    Returns ``{(m, s): coefficient}`` of ``z^(m1+m2) sum_i C(s1,i) [m2]^i D^(s1+s2-i)``.
    """
    if s1 < 0 or s2 < 0:
        raise ConfigurationError("derivative orders must be nonnegative")
    c = deformed_number(spec, m2)
    out: Dict[Tuple[int, int], Fraction] = {}
    for i in range(s1 + 1):
        v = comb(s1, i) * c**i
        if v:
            key = (m1 + m2, s1 + s2 - i)
            out[key] = out.get(key, 0) + v
    return out


def basis_bracket(spec: AlgebraSpec, a: Tuple[int, int], b: Tuple[int, int]) -> Dict[Tuple[int, int], Fraction]:
    """``a o b - b o a`` in the same basis."""
    ab = basis_product(spec, a[0], a[1], b[0], b[1])
    ba = basis_product(spec, b[0], b[1], a[0], a[1])
    out = dict(ab)
    for k, v in ba.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}
