"""Exact rational linear solves (thin wrapper over sympy)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import sympy


@dataclass(frozen=True)
class Solution:
    particular: tuple[Fraction, ...]
    free: int  # dimension of the solution affine space

    @property
    def unique(self) -> bool:
        return self.free == 0


def _to_sym(v: Fraction) -> sympy.Rational:
    v = Fraction(v)
    return sympy.Rational(v.numerator, v.denominator)


def _to_frac(v) -> Fraction:
    v = sympy.Rational(v)
    return Fraction(int(v.p), int(v.q))


def solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Solution]:
    """Solve ``rows . x = rhs`` exactly; ``None`` if inconsistent.

    Free parameters of an underdetermined system are set to zero in the
    returned particular solution.
    """
    if not rows:
        return None
    ncols = len(rows[0])
    A = sympy.Matrix([[_to_sym(a) for a in r] for r in rows])
    b = sympy.Matrix([_to_sym(v) for v in rhs])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({t: 0 for t in params})
    return Solution(tuple(_to_frac(sol[i]) for i in range(ncols)), int(params.shape[0]))


def determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant (Bareiss via sympy)."""
    if not matrix:
        return Fraction(1)
    M = sympy.Matrix([[_to_sym(a) for a in r] for r in matrix])
    return _to_frac(M.det(method="bareiss"))
