"""Graded linear operators on Laurent polynomials.

An operator is a finite map ``shift -> grade function``; it sends ``z**n``
to ``sum_s c_s(n) z**(n+s)``.  Coefficients are always functions of the
degree of the monomial the operator *receives*; helpers that attach a
coefficient "after acting" (:meth:`GradedOperator.premultiply`) translate
a function of the final degree into that convention.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Tuple

from ..kernel import as_fraction
from ..laurent import LaurentPoly
from .grade import Grade, GradeFunction, PointwiseGrade, promote


class GradedOperator:
    __slots__ = ("_terms", "label")

    def __init__(self, terms: Dict[int, object] | None = None, label: str = ""):
        out: Dict[int, Grade] = {}
        for s, c in (terms or {}).items():
            c = promote(c)
            out[int(s)] = out[int(s)] + c if int(s) in out else c
        self._terms = {s: c for s, c in out.items() if not _known_zero(c)}
        self.label = label

    @classmethod
    def zero(cls) -> "GradedOperator":
        return cls({}, "0")

    @classmethod
    def identity(cls) -> "GradedOperator":
        return cls({0: 1}, "1")

    @classmethod
    def shift_by(cls, s: int, coeff=1, label: str = "") -> "GradedOperator":
        return cls({s: coeff}, label)

    @property
    def terms(self) -> Dict[int, Grade]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, Grade]]:
        return iter(sorted(self._terms.items()))

    @property
    def shifts(self) -> list[int]:
        return sorted(self._terms)

    def single(self) -> Tuple[int, Grade]:
        """The ``(shift, coefficient)`` of a one-term operator."""
        if len(self._terms) != 1:
            raise ValueError(f"operator {self.label or self} has {len(self._terms)} terms, need 1")
        return next(iter(self._terms.items()))

    # -- action
    def coefficient(self, shift: int, n: int) -> Fraction:
        c = self._terms.get(shift)
        return Fraction(0) if c is None else c(n)

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        out: Dict[int, Fraction] = {}
        for n, a in f.items():
            for s, c in self._terms.items():
                v = c(n)
                if v:
                    out[n + s] = out.get(n + s, 0) + a * v
        return LaurentPoly(out)

    def on_monomial(self, n: int) -> LaurentPoly:
        return self.apply(LaurentPoly.monomial(n))

    __call__ = apply

    # -- algebra
    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        out = dict(self._terms)
        for s, c in other._terms.items():
            out[s] = out[s] + c if s in out else c
        return GradedOperator(out)

    def __neg__(self):
        return GradedOperator({s: -c for s, c in self._terms.items()}, f"-{self.label}")

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value) -> "GradedOperator":
        """Multiply by a scalar or by a grade function of the *input* degree."""
        g = promote(value)
        return GradedOperator({s: c * g for s, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, GradedOperator):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def premultiply(self, g) -> "GradedOperator":
        """``g(z d/dz) * self``: ``g`` is evaluated at the final degree."""
        g = promote(g)
        return GradedOperator({s: g.shift(s) * c for s, c in self._terms.items()})

    # -- comparisons
    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self._terms.values()) if self._terms else True

    def vanishes_on(self, degrees: Iterable[int]) -> bool:
        degrees = list(degrees)
        return all(c(n) == 0 for c in self._terms.values() for n in degrees)

    def residual_table(self, degrees: Iterable[int]) -> list[dict]:
        """Nonzero ``(degree, shift, value)`` entries on the probe degrees."""
        rows = []
        for n in degrees:
            for s, c in self.items():
                v = c(n)
                if v:
                    rows.append({"degree": n, "shift": s, "value": v})
        return rows

    def agrees_with(self, other: "GradedOperator", degrees: Iterable[int]) -> bool:
        return (self - other).vanishes_on(degrees)

    def __eq__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"GradedOperator({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"[{c}]*shift({s})" for s, c in self.items())

    def to_json(self) -> list:
        return [{"shift": s, "coefficient": c.to_json()} for s, c in self.items()]


def _known_zero(c: Grade) -> bool:
    return isinstance(c, GradeFunction) and c.is_zero()


def _is_zero(c: Grade) -> bool:
    if isinstance(c, PointwiseGrade):
        raise TypeError("exact zero test needs closed-form coefficients; use vanishes_on")
    return c.is_zero()


def compose(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    """``a o b``: apply ``b`` first."""
    out: Dict[int, Grade] = {}
    for sa, ca in a._terms.items():
        for sb, cb in b._terms.items():
            term = ca.shift(sb) * cb
            s = sa + sb
            out[s] = out[s] + term if s in out else term
    return GradedOperator(out)


def bracket(a: GradedOperator, b: GradedOperator, x=1, y=1) -> GradedOperator:
    """``x*a*b - y*b*a``; grade-valued ``x, y`` act at the final degree."""
    return compose(a, b).premultiply(x) - compose(b, a).premultiply(y)


def commutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    return compose(a, b) - compose(b, a)


def scalar(value) -> Fraction:
    return as_fraction(value)
