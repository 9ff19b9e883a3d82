"""Central terms of the deformed Heisenberg-Virasoro algebra and the
twisted Jacobi sum."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from ..errors import ConfigurationError, PoleError
from ..kernel import AlgebraSpec, Rational, as_fraction, deformed_number
from .operators import GradedOperator, commutator

# exponent sign of (q/p)^{+-m} in C_I: the proposition display uses +m,
# the cocycle-derived formula uses -m
CI_PROPOSITION = "proposition"
CI_COCYCLE = "cocycle"


def half_ratio(spec: AlgebraSpec, m: int) -> Fraction:
    """``[m] / [2m]``, equal to ``1/(eps1^m + eps2^m)``; 1/2 at ``m = 0``."""
    if spec.eps_form:
        return 1 / (spec.eps1**m + spec.eps2**m)
    if m == 0:
        return Fraction(1, 2)
    den = deformed_number(spec, 2 * m)
    if den == 0:
        raise PoleError(f"[2m] vanishes at m={m}")
    return deformed_number(spec, m) / den


@dataclass(frozen=True)
class CentralTerms:
    m: int
    C_L: Fraction
    C_LI: Fraction
    C_I: Fraction

    def to_json(self) -> dict:
        return {"m": self.m, "C_L": str(self.C_L), "C_LI": str(self.C_LI), "C_I": str(self.C_I)}


def central_terms(
    spec: AlgebraSpec,
    m: int,
    C_L: Rational = 1,
    C_LI: Rational = 1,
    C_I: Rational = 1,
    ci_variant: str = CI_PROPOSITION,
) -> CentralTerms:
    if ci_variant not in (CI_PROPOSITION, CI_COCYCLE):
        raise ConfigurationError(f"unknown C_I variant {ci_variant!r}")
    n = lambda k: deformed_number(spec, k)  # noqa: E731
    r = spec.q / spec.p
    h = half_ratio(spec, m)
    cl = as_fraction(C_L) * r ** (-m) * h / 6 * n(m - 1) * n(m) * n(m + 1)
    cli = as_fraction(C_LI) * r ** (-m) * 2 * h * n(m) * n(m + 1)
    sign = 1 if ci_variant == CI_PROPOSITION else -1
    ci = as_fraction(C_I) * r ** (sign * m) * 2 * h * n(m)
    return CentralTerms(m, cl, cli, ci)


def q_case_display(q: Rational, m: int, C_L: Rational = 1, C_LI: Rational = 1, C_I: Rational = 1) -> CentralTerms:
    """The one-parameter q-case central terms as displayed, with
    ``[x]_q = (1 - q^x)/(1 - q)``."""
    q = as_fraction(q)
    n = lambda k: (1 - q**k) / (1 - q)  # noqa: E731
    cl = as_fraction(C_L) * q ** (-m) / (12 * (1 + q**m)) * n(m - 1) * n(m) * n(m + 1)
    cli = 2 * as_fraction(C_LI) * q ** (-m) / (1 + q**m) * n(m) * n(m + 1)
    two_m = n(2 * m)
    ci = as_fraction(C_I) * q**m * (2 * n(m) / two_m if m else Fraction(1)) * n(m)
    return CentralTerms(m, cl, cli, ci)


def alpha_twist(spec: AlgebraSpec, i: int) -> Fraction:
    """``[2i]/[i]`` (``eps1^i + eps2^i``; 2 at ``i = 0``)."""
    return 1 / half_ratio(spec, i)


def jacobi_residual(
    spec: AlgebraSpec,
    n: int,
    m: int,
    k: int,
    family: Callable[[int], GradedOperator],
) -> GradedOperator:
    """Cyclic sum of ``(eps1 eps2)^l [2i]/[i] [X_i, [X_j, X_l]]``."""
    spec.require_eps_form("jacobi_residual")
    e = spec.eps1 * spec.eps2
    total = GradedOperator.zero()
    for i, j, l in ((n, m, k), (m, k, n), (k, n, m)):
        inner = commutator(family(j), family(l))
        total = total + commutator(family(i), inner).scale(e**l * alpha_twist(spec, i))
    return total


def plain_jacobi_residual(n: int, m: int, k: int, family: Callable[[int], GradedOperator]) -> GradedOperator:
    """Untwisted cyclic sum; zero for any associative family."""
    total = GradedOperator.zero()
    for i, j, l in ((n, m, k), (m, k, n), (k, n, m)):
        total = total + commutator(family(i), commutator(family(j), family(l)))
    return total


def cocycle_probe(spec: AlgebraSpec, ms: Iterable[int], **knobs) -> list[dict]:
    """Antisymmetry probe ``C(-m)`` against ``C(m)`` on a list of ``m``."""
    rows = []
    for mm in ms:
        a, b = central_terms(spec, mm, **knobs), central_terms(spec, -mm, **knobs)
        rows.append({"m": mm, "C_L(m)": a.C_L, "C_L(-m)": b.C_L})
    return rows


def c_l_reflection_factor(spec: AlgebraSpec, m: int) -> Fraction:
    """Exact factor ``f`` with ``C_L(-m) = f * C_L(m)`` for eps-form numbers."""
    spec.require_eps_form("c_l_reflection_factor")
    r = spec.q / spec.p
    return -(r ** (2 * m)) * (spec.eps1 * spec.eps2) ** (-2 * m)


__all__ = [
    "CI_PROPOSITION",
    "CI_COCYCLE",
    "CentralTerms",
    "central_terms",
    "q_case_display",
    "half_ratio",
    "alpha_twist",
    "jacobi_residual",
    "plain_jacobi_residual",
    "c_l_reflection_factor",
    "cocycle_probe",
]
