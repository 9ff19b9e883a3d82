"""Exact truncated power series in ``t_1 .. t_K`` and differential
operators acting on them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from ..errors import ShapeError
from ..kernel import Rational, as_fraction

Index = Tuple[int, ...]


class TruncatedSeries:
    """Polynomial in ``t_1 .. t_K`` with every monomial of total degree ``<= cap``.

    ``dropped`` counts monomials discarded by the producing operation.
    Variables are 1-based in the public API (``t_1`` is index 1).
    """

    __slots__ = ("K", "cap", "_c", "dropped")

    def __init__(self, K: int, cap: int, coeffs: Optional[Mapping[Index, Rational]] = None):
        if K < 1 or cap < 0:
            raise ShapeError(f"need K >= 1 and cap >= 0, got K={K}, cap={cap}")
        self.K, self.cap, self.dropped = K, cap, 0
        c: Dict[Index, Fraction] = {}
        for idx, v in (coeffs or {}).items():
            idx = tuple(int(e) for e in idx)
            if len(idx) != K or min(idx, default=0) < 0:
                raise ShapeError(f"bad exponent {idx} for K={K}")
            if sum(idx) > cap:
                self.dropped += 1
                continue
            c[idx] = c.get(idx, Fraction(0)) + as_fraction(v)
        self._c = {k: v for k, v in c.items() if v != 0}

    @classmethod
    def _raw(cls, K, cap, coeffs, dropped=0):
        obj = cls.__new__(cls)
        obj.K, obj.cap, obj.dropped = K, cap, dropped
        obj._c = {k: v for k, v in coeffs.items() if v != 0}
        return obj

    @classmethod
    def zero(cls, K: int, cap: int) -> "TruncatedSeries":
        return cls._raw(K, cap, {})

    @classmethod
    def one(cls, K: int, cap: int, value: Rational = 1) -> "TruncatedSeries":
        return cls._raw(K, cap, {(0,) * K: as_fraction(value)})

    @classmethod
    def variable(cls, i: int, K: int, cap: int) -> "TruncatedSeries":
        if not 1 <= i <= K:
            raise ShapeError(f"t_{i} is not among t_1..t_{K}")
        idx = [0] * K
        idx[i - 1] = 1
        return cls(K, cap, {tuple(idx): 1})

    @classmethod
    def random(cls, K: int, cap: int, rng: random.Random, terms: int = 6, height: int = 9) -> "TruncatedSeries":
        coeffs = {}
        for _ in range(terms):
            idx = [0] * K
            for _ in range(rng.randint(0, cap)):
                idx[rng.randrange(K)] += 1
            coeffs[tuple(idx)] = Fraction(rng.randint(-height, height), rng.randint(1, height))
        return cls(K, cap, coeffs)

    def items(self) -> Iterator[Tuple[Index, Fraction]]:
        return iter(sorted(self._c.items()))

    def coeff(self, idx: Sequence[int]) -> Fraction:
        return self._c.get(tuple(idx), Fraction(0))

    def __len__(self):
        return len(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def _check(self, other: "TruncatedSeries"):
        if (self.K, self.cap) != (other.K, other.cap):
            raise ShapeError(f"series shapes differ: (K={self.K}, cap={self.cap}) vs (K={other.K}, cap={other.cap})")

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.K, self.cap) == (other.K, other.cap) and self._c == other._c

    def __hash__(self):
        return hash((self.K, self.cap, frozenset(self._c.items())))

    def __add__(self, other: "TruncatedSeries"):
        self._check(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return TruncatedSeries._raw(self.K, self.cap, out, self.dropped + other.dropped)

    def __neg__(self):
        return TruncatedSeries._raw(self.K, self.cap, {k: -v for k, v in self._c.items()}, self.dropped)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Rational) -> "TruncatedSeries":
        s = as_fraction(s)
        return TruncatedSeries._raw(self.K, self.cap, {k: v * s for k, v in self._c.items()}, self.dropped)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        out: Dict[Index, Fraction] = {}
        dropped = 0
        # iterate in sorted order so the result never depends on operand order
        a, b = sorted(self._c.items()), sorted(other._c.items())
        for k1, v1 in a:
            d1 = sum(k1)
            for k2, v2 in b:
                if d1 + sum(k2) > self.cap:
                    dropped += 1
                    continue
                k = tuple(x + y for x, y in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return TruncatedSeries._raw(self.K, self.cap, out, dropped)

    __rmul__ = __mul__

    def derivative(self, i: int, times: int = 1) -> "TruncatedSeries":
        """``(d/dt_i)^times``."""
        if not 1 <= i <= self.K:
            raise ShapeError(f"t_{i} is not among t_1..t_{self.K}")
        out = {}
        for k, v in self._c.items():
            e = k[i - 1]
            if e < times:
                continue
            nk = list(k)
            nk[i - 1] = e - times
            out[tuple(nk)] = v * Fraction(factorial(e), factorial(e - times))
        return TruncatedSeries._raw(self.K, self.cap, out)

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "cap": self.cap,
            "terms": {".".join(map(str, k)): str(v) for k, v in self.items()},
            "dropped": self.dropped,
        }

    def max_abs(self) -> Fraction:
        return max((abs(v) for v in self._c.values()), default=Fraction(0))

    def __repr__(self):
        return f"TruncatedSeries(K={self.K}, cap={self.cap}, terms={len(self._c)})"


def bell_series(L: int, K: int, cap: int, scale=lambda k: 1) -> list[TruncatedSeries]:
    """Complete Bell polynomials ``B_0..B_L`` in ``s_k = scale(k) t_k`` restricted
    to ``t_1..t_K`` (``t_{>K} = 0``) and truncated at ``cap``.  The recurrence
    only raises degrees, so truncating at each step is exact."""
    B = [TruncatedSeries.one(K, cap)]
    s = [None] + [TruncatedSeries.variable(k, K, cap).scale(scale(k)) for k in range(1, K + 1)]
    for n in range(L):
        acc = TruncatedSeries.zero(K, cap)
        for k in range(min(n, K - 1) + 1):
            acc = acc + (B[n - k] * s[k + 1]).scale(comb(n, k))
        acc.dropped = 0
        B.append(acc)
    return B


# --------------------------------------------------------------------------
# differential operators


@dataclass(frozen=True)
class DiffTerm:
    """``coeff * prod_i (d/dt_i)^{derivs[i-1]}``, labelled by ``tag``."""

    coeff: TruncatedSeries
    derivs: Index
    tag: str = ""


@dataclass
class OperatorImage:
    """Result of applying a :class:`DiffOperator`: one series per tag."""

    parts: Dict[str, TruncatedSeries]
    K: int
    cap: int
    dropped: int = 0

    def total(self) -> TruncatedSeries:
        acc = TruncatedSeries.zero(self.K, self.cap)
        for k in sorted(self.parts):
            acc = acc + self.parts[k]
        return acc

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts.values())

    def to_json(self) -> dict:
        return {"parts": {k or "plain": self.parts[k].to_json() for k in sorted(self.parts)}, "dropped": self.dropped}


class DiffOperator:
    """Finite sum of :class:`DiffTerm`; ``dropped_terms`` counts pieces of the
    defining formula that fall outside the series shape."""

    def __init__(self, K: int, cap: int, terms: Sequence[DiffTerm] = (), dropped_terms: int = 0, label: str = ""):
        self.K, self.cap = K, cap
        self.terms = list(terms)
        self.dropped_terms = dropped_terms
        self.label = label

    def tags(self) -> list[str]:
        return sorted({t.tag for t in self.terms})

    def apply(self, f: TruncatedSeries) -> OperatorImage:
        if (f.K, f.cap) != (self.K, self.cap):
            raise ShapeError("operator and series shapes differ")
        parts: Dict[str, TruncatedSeries] = {tag: TruncatedSeries.zero(self.K, self.cap) for tag in self.tags()}
        dropped = 0
        for term in self.terms:
            g = f
            for i, times in enumerate(term.derivs, start=1):
                if times:
                    g = g.derivative(i, times)
                    if g.is_zero():
                        break
            if g.is_zero():
                continue
            prod = term.coeff * g
            dropped += prod.dropped
            parts[term.tag] = parts[term.tag] + prod
        for p in parts.values():
            p.dropped = 0
        return OperatorImage(parts, self.K, self.cap, dropped)

    def __call__(self, f: TruncatedSeries) -> OperatorImage:
        return self.apply(f)

    def __repr__(self):
        return f"DiffOperator({self.label!r}, terms={len(self.terms)}, dropped_terms={self.dropped_terms})"


def derivative_index(K: int, i: int) -> Index:
    idx = [0] * K
    idx[i - 1] = 1
    return tuple(idx)


__all__ = [
    "TruncatedSeries",
    "bell_series",
    "DiffTerm",
    "DiffOperator",
    "OperatorImage",
    "derivative_index",
]
