"""Exact functions of an integer degree.

A :class:`GradeFunction` is a finite exponential polynomial

    n -> sum_i r_i * beta_i**n * n**k_i

stored canonically, so two closed forms are equal iff their term maps are
equal (distinct ``(beta, k)`` pairs are linearly independent on the
integers).  :class:`PointwiseGrade` wraps an arbitrary callable for
deformations without structure functions; equality is then only testable
on probe degrees.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterable, Tuple, Union

from ..kernel import AlgebraSpec, Rational, as_fraction, deformed_number

Key = Tuple[Fraction, int]


class GradeFunction:
    __slots__ = ("_terms",)

    def __init__(self, terms: Dict[Key, Rational] | None = None):
        out: Dict[Key, Fraction] = {}
        for (beta, k), r in (terms or {}).items():
            beta = as_fraction(beta)
            if beta == 0:
                raise ValueError("grade base must be nonzero")
            key = (beta, int(k))
            out[key] = out.get(key, Fraction(0)) + as_fraction(r)
        self._terms = {k: v for k, v in out.items() if v != 0}

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = {k: v for k, v in terms.items() if v != 0}
        return obj

    # constructors
    @classmethod
    def constant(cls, c: Rational) -> "GradeFunction":
        return cls({(1, 0): c})

    @classmethod
    def exp(cls, beta: Rational, coeff: Rational = 1) -> "GradeFunction":
        """``n -> coeff * beta**n``."""
        return cls({(beta, 0): coeff})

    @classmethod
    def degree(cls) -> "GradeFunction":
        """``n -> n``."""
        return cls({(1, 1): 1})

    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __call__(self, n: int) -> Fraction:
        total = Fraction(0)
        for (beta, k), r in self._terms.items():
            total += r * beta**n * n**k
        return total

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradeFunction.constant(other)
        if not isinstance(other, GradeFunction):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # algebra
    def __add__(self, other):
        other = _promote(other)
        if isinstance(other, PointwiseGrade):
            return PointwiseGrade(self) + other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return GradeFunction._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return GradeFunction._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-_promote(other))

    def __rsub__(self, other):
        return _promote(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)):
            s = as_fraction(other)
            return GradeFunction._raw({k: v * s for k, v in self._terms.items()})
        other = _promote(other)
        if isinstance(other, PointwiseGrade):
            return PointwiseGrade(self) * other
        out: Dict[Key, Fraction] = {}
        for (b1, k1), r1 in self._terms.items():
            for (b2, k2), r2 in other._terms.items():
                key = (b1 * b2, k1 + k2)
                out[key] = out.get(key, 0) + r1 * r2
        return GradeFunction._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = GradeFunction.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, s: int) -> "GradeFunction":
        """``n -> f(n + s)``."""
        if s == 0:
            return self
        out: Dict[Key, Fraction] = {}
        for (beta, k), r in self._terms.items():
            scale = r * beta**s
            for i in range(k + 1):
                key = (beta, i)
                out[key] = out.get(key, 0) + scale * comb(k, i) * Fraction(s) ** (k - i)
        return GradeFunction._raw(out)

    def __repr__(self):
        return f"GradeFunction({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (beta, k), r in self.items():
            factors = [str(r)]
            if beta != 1:
                factors.append(f"({beta})^n")
            if k:
                factors.append("n" if k == 1 else f"n^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [[str(r), str(beta), k] for (beta, k), r in self.items()]


class PointwiseGrade:
    """A grade function known only through evaluation."""

    __slots__ = ("_fn", "label")

    def __init__(self, fn: Union[Callable[[int], Fraction], GradeFunction], label: str = "f"):
        self._fn = fn
        self.label = label

    def __call__(self, n: int) -> Fraction:
        return Fraction(self._fn(n))

    def shift(self, s: int) -> "PointwiseGrade":
        if s == 0:
            return self
        fn = self._fn
        return PointwiseGrade(lambda n: fn(n + s), f"{self.label}(n+{s})")

    def __add__(self, other):
        other = _promote(other)
        f, g = self._fn, other
        return PointwiseGrade(lambda n: f(n) + g(n), "sum")

    __radd__ = __add__

    def __neg__(self):
        f = self._fn
        return PointwiseGrade(lambda n: -f(n), "neg")

    def __sub__(self, other):
        return self + (-_promote(other))

    def __rsub__(self, other):
        return _promote(other) - self

    def __mul__(self, other):
        other = _promote(other)
        f, g = self._fn, other
        return PointwiseGrade(lambda n: f(n) * g(n), "prod")

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        raise TypeError("zero test of a pointwise grade function is undecidable; probe degrees")

    def __repr__(self):
        return f"PointwiseGrade({self.label})"

    def to_json(self) -> str:
        return f"<pointwise {self.label}>"


Grade = Union[GradeFunction, PointwiseGrade]


def _promote(value) -> Grade:
    if isinstance(value, (GradeFunction, PointwiseGrade)):
        return value
    return GradeFunction.constant(as_fraction(value))


def promote(value) -> Grade:
    """Scalars become constant grade functions."""
    return _promote(value)


def number_grade(spec: AlgebraSpec, shift: int = 0) -> Grade:
    """``n -> [n + shift]`` as an exact grade function (pointwise for GenericR)."""
    if spec.eps_form:
        c = spec.kappa / (spec.eps1 - spec.eps2)
        g = GradeFunction({(spec.eps1, 0): c, (spec.eps2, 0): -c})
        return g.shift(shift)
    return PointwiseGrade(lambda n: deformed_number(spec, n + shift), f"[n+{shift}]")


def vanishes_on(g: Grade, degrees: Iterable[int]) -> bool:
    return all(g(n) == 0 for n in degrees)
