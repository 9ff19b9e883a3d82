"""Closure analyzer for two-coefficient brackets.

Given single-term operators ``A, B, C`` and a structure constant ``c`` the
analyzer asks for which coefficients ``x, y`` the relation

    x A B - y B A = c C

holds on the probe degrees.  It reports, in increasing order of
permissiveness, whether constant ``x, y`` exist, whether grade-dependent
``x = X beta^N, y = Y beta^N`` (``N`` the final degree) exist for a base
``beta`` drawn from the algebra's parameters, and the degree-by-degree
solution lines, which always exist unless a degree is inconsistent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from ..errors import ConfigurationError
from ..kernel import AlgebraSpec, deformed_number
from ..linsolve import solve_exact
from .heisenberg import SHIFTED, build_I, build_L, displayed_coefficients
from .operators import GradedOperator

STRUCTURAL_FAIL = "structural-fail"


@dataclass
class DegreeRow:
    degree: int
    ab: Fraction  # coefficient of A B on z^degree
    ba: Fraction
    target: Fraction  # c * C on z^degree

    @property
    def status(self) -> str:
        if self.ab == 0 and self.ba == 0:
            return "free" if self.target == 0 else "inconsistent"
        return "line"

    def satisfied_by(self, x: Fraction, y: Fraction) -> bool:
        return x * self.ab - y * self.ba == self.target

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "ab": str(self.ab),
            "ba": str(self.ba),
            "target": str(self.target),
            "status": self.status,
        }


@dataclass
class ClosureAnalysis:
    shifts: Tuple[int, int, int]
    structural_ok: bool
    rows: List[DegreeRow] = field(default_factory=list)
    constant: Optional[Tuple[Fraction, Fraction]] = None
    constant_free: int = 0
    grade_fit: Optional[Tuple[Fraction, Fraction, Fraction]] = None  # (beta, X, Y)
    displayed: Optional[Tuple[Optional[Fraction], Optional[Fraction]]] = None
    displayed_failures: List[int] = field(default_factory=list)
    displayed_grade_ratio: Optional[Tuple[Fraction, Fraction]] = None  # (r, beta)

    @property
    def degreewise_ok(self) -> bool:
        return self.structural_ok and all(r.status != "inconsistent" for r in self.rows)

    @property
    def displayed_ok(self) -> Optional[bool]:
        if self.displayed is None or None in self.displayed:
            return None
        return self.structural_ok and not self.displayed_failures

    @property
    def verdict(self) -> str:
        if not self.structural_ok:
            return STRUCTURAL_FAIL
        if self.displayed_ok:
            return "exact-pass"
        if self.degreewise_ok:
            return "logged-discrepancy"
        return "fail"

    def to_json(self) -> dict:
        def fr(v):
            return None if v is None else str(v)

        return {
            "shifts": {"AB": self.shifts[0], "BA": self.shifts[1], "target": self.shifts[2]},
            "structural_ok": self.structural_ok,
            "degreewise_ok": self.degreewise_ok,
            "constant_solution": None
            if self.constant is None
            else {"x": fr(self.constant[0]), "y": fr(self.constant[1]), "free": self.constant_free},
            "grade_fit": None
            if self.grade_fit is None
            else {"beta": fr(self.grade_fit[0]), "X": fr(self.grade_fit[1]), "Y": fr(self.grade_fit[2])},
            "displayed": None if self.displayed is None else {"x": fr(self.displayed[0]), "y": fr(self.displayed[1])},
            "displayed_failing_degrees": self.displayed_failures,
            "displayed_grade_ratio": None
            if self.displayed_grade_ratio is None
            else {"r": fr(self.displayed_grade_ratio[0]), "beta": fr(self.displayed_grade_ratio[1])},
            "rows": [r.to_json() for r in self.rows],
            "verdict": self.verdict,
        }


def candidate_bases(spec: AlgebraSpec) -> list[Fraction]:
    p, q = spec.p, spec.q
    seeds = [p, q, p * q]
    if spec.eps_form:
        seeds = [spec.eps1, spec.eps2, spec.eps1 * spec.eps2] + seeds
    out: list[Fraction] = []
    for b in seeds:
        for v in (b, 1 / b):
            if v != 1 and v not in out:
                out.append(v)
    return out


def closure_analyze(
    A: GradedOperator,
    B: GradedOperator,
    C: GradedOperator,
    constant: Fraction,
    degrees: Iterable[int],
    displayed: Optional[Tuple[Optional[Fraction], Optional[Fraction]]] = None,
    bases: Sequence[Fraction] = (),
) -> ClosureAnalysis:
    degrees = list(degrees)
    (sa, ca), (sb, cb), (sc, cc) = A.single(), B.single(), C.single()
    shifts = (sa + sb, sa + sb, sc)
    res = ClosureAnalysis(shifts=shifts, structural_ok=(sa + sb == sc), displayed=displayed)
    if not res.structural_ok:
        return res
    constant = Fraction(constant)
    for n in degrees:
        res.rows.append(DegreeRow(n, ca(n + sb) * cb(n), cb(n + sa) * ca(n), constant * cc(n)))

    sol = solve_exact([(r.ab, -r.ba) for r in res.rows], [r.target for r in res.rows])
    if sol is not None:
        res.constant = sol.particular
        res.constant_free = sol.free

    S = sa + sb
    for beta in bases:
        rows = [(r.ab * beta ** (r.degree + S), -r.ba * beta ** (r.degree + S)) for r in res.rows]
        s = solve_exact(rows, [r.target for r in res.rows])
        if s is not None:
            res.grade_fit = (Fraction(beta), *s.particular)
            break

    if displayed is not None and None not in displayed:
        x, y = displayed
        res.displayed_failures = [r.degree for r in res.rows if r.status == "line" and not r.satisfied_by(x, y)]
        res.displayed_grade_ratio = _fit_displayed_ratio(res.rows, x, y, S, bases)
    return res


def _fit_displayed_ratio(rows, x, y, S, bases):
    """Find ``r, beta`` with ``r beta^N (x AB - y BA) = target`` on every row."""
    live = [r for r in rows if r.status == "line"]
    for beta in [Fraction(1), *bases]:
        r_val = None
        ok = True
        for row in live:
            lhs = (x * row.ab - y * row.ba) * beta ** (row.degree + S)
            if lhs == 0:
                if row.target != 0:
                    ok = False
                    break
                continue
            ratio = row.target / lhs
            if r_val is None:
                r_val = ratio
            elif ratio != r_val:
                ok = False
                break
        if ok and r_val is not None:
            return (r_val, Fraction(beta))
    return None


FAMILIES = ("LL", "LI", "II")


def family_closure(
    spec: AlgebraSpec,
    family: str,
    m1: int,
    m2: int,
    convention: str = SHIFTED,
    degrees: Iterable[int] = range(-4, 5),
) -> ClosureAnalysis:
    """Closure analysis of one of the Heisenberg-Witt relations."""
    num = lambda n: deformed_number(spec, n)  # noqa: E731
    coef = displayed_coefficients(spec, m1, m2)
    if family == "LL":
        A, B = build_L(spec, m1, convention), build_L(spec, m2, convention)
        C, c, displayed = build_L(spec, m1 + m2, convention), num(m1 - m2), (coef["x"], coef["y"])
    elif family == "LI":
        A, B = build_L(spec, m1, convention), build_I(spec, m2)
        C, c, displayed = build_I(spec, m1 + m2), -num(m2), (coef["u"], coef["v"])
    elif family == "II":
        A, B = build_I(spec, m1), build_I(spec, m2)
        C, c, displayed = build_I(spec, m1 + m2), Fraction(0), (Fraction(1), Fraction(1))
    else:
        raise ConfigurationError(f"unknown family {family!r}; use {FAMILIES}")
    return closure_analyze(A, B, C, c, degrees, displayed, candidate_bases(spec))
