"""Sparse exact Laurent polynomials in one or several variables."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Sequence, Tuple

from .errors import ParameterDomainError, PoleError, ShapeError
from .kernel import Rational, as_fraction

Exponent = Tuple[int, ...]


def _canon(coeffs) -> dict:
    return {k: c for k, c in coeffs.items() if c != 0}


class MultiLaurent:
    """Laurent polynomial in ``arity`` variables, keyed by exponent tuples."""

    __slots__ = ("arity", "_c")

    def __init__(self, arity: int, coeffs: Mapping[Exponent, Rational] | None = None):
        if arity < 1:
            raise ShapeError("arity must be at least 1")
        self.arity = arity
        c = {}
        for k, v in (coeffs or {}).items():
            k = tuple(int(e) for e in k)
            if len(k) != arity:
                raise ShapeError(f"exponent {k} does not have arity {arity}")
            c[k] = c.get(k, Fraction(0)) + as_fraction(v)
        self._c = _canon(c)

    @classmethod
    def _raw(cls, arity, coeffs):
        obj = cls.__new__(cls)
        obj.arity = arity
        obj._c = coeffs
        return obj

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Rational = 1) -> "MultiLaurent":
        return cls(len(exponent), {tuple(exponent): coeff})

    @classmethod
    def variable(cls, index: int, arity: int) -> "MultiLaurent":
        e = [0] * arity
        e[index] = 1
        return cls.monomial(e)

    @classmethod
    def constant(cls, value: Rational, arity: int) -> "MultiLaurent":
        return cls(arity, {(0,) * arity: value})

    # -- container protocol
    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(sorted(self._c.items()))

    def coeff(self, exponent: Sequence[int]) -> Fraction:
        return self._c.get(tuple(exponent), Fraction(0))

    def __len__(self):
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._wrap_const(Fraction(other))
        if not isinstance(other, MultiLaurent):
            return NotImplemented
        return self.arity == other.arity and self._c == other._c

    def __hash__(self):
        return hash((self.arity, frozenset(self._c.items())))

    # -- ring operations
    def _coerce(self, other):
        if isinstance(other, MultiLaurent):
            if other.arity != self.arity:
                raise ShapeError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        return self._wrap_const(as_fraction(other))

    def _wrap_const(self, value: Fraction):
        return MultiLaurent(self.arity, {(0,) * self.arity: value})

    def _new(self, coeffs):
        return MultiLaurent._raw(self.arity, _canon(coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiLaurent):
            s = as_fraction(other)
            return self._new({k: v * s for k, v in self._c.items()})
        other = self._coerce(other)
        out: Dict = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = self._key_add(k1, k2)
                out[k] = out.get(k, 0) + v1 * v2
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise ParameterDomainError("only monomials have Laurent inverses")
            (k, v), = self._c.items()
            return self._new({self._key_scale(k, n): v**n})
        out = self._wrap_const(Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    @staticmethod
    def _key_add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def _key_scale(a, n):
        return tuple(x * n for x in a)

    # -- maps
    def dilate(self, base: Rational, index: int = 0):
        """Substitute ``z_index -> base * z_index``."""
        base = as_fraction(base)
        if base == 0:
            raise ParameterDomainError("dilation base must be nonzero")
        return self._new({k: v * base ** self._exp(k, index) for k, v in self._c.items()})

    def _exp(self, key, index):
        return key[index]

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        point = [as_fraction(x) for x in point]
        if len(point) != self.arity:
            raise ShapeError(f"point has {len(point)} coordinates, need {self.arity}")
        total = Fraction(0)
        for k, v in self._c.items():
            term = v
            for x, e in zip(point, k):
                if x == 0 and e < 0:
                    raise PoleError("negative power evaluated at a zero coordinate")
                term *= x**e
            total += term
        return total

    def to_json(self) -> dict:
        return {",".join(map(str, k)): str(v) for k, v in self.items()}

    @classmethod
    def from_json(cls, arity: int, data: Mapping[str, str]) -> "MultiLaurent":
        return cls(arity, {tuple(int(e) for e in k.split(",")): v for k, v in data.items()})

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for k, v in self.items():
            mono = "*".join(
                f"z{i + 1}" if e == 1 else f"z{i + 1}^{e}" for i, e in enumerate(k) if e != 0
            )
            terms.append(_term_text(v, mono))
        return " + ".join(terms)

    def __repr__(self):
        return f"MultiLaurent({self.arity}, {self.to_json()})"


class LaurentPoly(MultiLaurent):
    """Univariate Laurent polynomial keyed by integer degree."""

    __slots__ = ()

    def __init__(self, coeffs: Mapping[int, Rational] | None = None):
        self.arity = 1
        c: Dict[int, Fraction] = {}
        for k, v in (coeffs or {}).items():
            c[int(k)] = c.get(int(k), Fraction(0)) + as_fraction(v)
        self._c = _canon(c)

    @classmethod
    def _raw(cls, arity, coeffs):
        obj = cls.__new__(cls)
        obj.arity = 1
        obj._c = coeffs
        return obj

    def _new(self, coeffs):
        return LaurentPoly._raw(1, _canon(coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: Rational = 1) -> "LaurentPoly":
        return cls({degree: coeff})

    @classmethod
    def variable(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def constant(cls, value: Rational) -> "LaurentPoly":
        return cls({0: value})

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, MultiLaurent):
            raise ShapeError("cannot mix univariate and multivariate polynomials")
        return self._wrap_const(as_fraction(other))

    def _wrap_const(self, value):
        return LaurentPoly({0: value})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    __hash__ = MultiLaurent.__hash__

    @staticmethod
    def _key_add(a, b):
        return a + b

    @staticmethod
    def _key_scale(a, n):
        return a * n

    def _exp(self, key, index):
        if index != 0:
            raise ShapeError("univariate polynomial has only variable 0")
        return key

    def evaluate(self, point) -> Fraction:
        if isinstance(point, (list, tuple)):
            (point,) = point
        x = as_fraction(point)
        total = Fraction(0)
        for k, v in self._c.items():
            if x == 0 and k < 0:
                raise PoleError("negative power evaluated at zero")
            total += v * x**k
        return total

    def degrees(self) -> list[int]:
        return sorted(self._c)

    def to_json(self) -> dict:
        return {str(k): str(v) for k, v in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(k): v for k, v in data.items()})

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(_term_text(v, "" if k == 0 else f"z^{k}") for k, v in self.items())

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly":
        """Parse the ``"c*z^k + ..."`` form produced by ``str``."""
        text = re.sub(r"(?<!\^)-", "+-", text.replace(" ", ""))
        out: Dict[int, Fraction] = {}
        for term in filter(None, text.split("+")):
            m = _TERM.fullmatch(term)
            if not m:
                raise ParameterDomainError(f"cannot parse term {term!r}")
            coeff, var, exp = m.group("c"), m.group("z"), m.group("e")
            if coeff in (None, "", "-"):
                c = Fraction(-1 if coeff == "-" else 1)
            else:
                c = Fraction(coeff.rstrip("*"))
            k = 0 if not var else (int(exp) if exp else 1)
            out[k] = out.get(k, 0) + c
        return cls(out)

    def __repr__(self):
        return f"LaurentPoly({self.to_json()})"


_TERM = re.compile(r"(?P<c>-?(?:\d+(?:/\d+)?\*?)?)(?P<z>z(?:\^(?P<e>-?\d+))?)?")


def _term_text(coeff: Fraction, mono: str) -> str:
    if not mono:
        return str(coeff)
    if coeff == 1:
        return mono
    if coeff == -1:
        return "-" + mono
    return f"{coeff}*{mono}"
