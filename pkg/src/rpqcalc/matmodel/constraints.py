"""Virasoro-type constraint operators in the coupling variables ``t_k``:
the expanded matrix-model operators ``T^{(j)}_n`` with the determinant
operator ``D_N``, and the toy-model operators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from ..combinat import permutation_sign
from ..errors import ConfigurationError, ParameterDomainError, PoleError
from ..kernel import AlgebraSpec, Kind, Rational, as_fraction, deformed_number, powered
from ..qspecial import jackson_monomial
from .series import DiffOperator, DiffTerm, TruncatedSeries, bell_series

ZD_TAG = "[z d/dz]"  # formal multiplier carried by the first toy term

PREFACTOR_VARIANTS = ("operator", "expanded", "higher")


def k_factor(spec: AlgebraSpec, grade: int) -> Fraction:
    """Scalar value of ``K(P,Q) = (p-q)/(p^P - q^Q) R(p^P, q^Q)`` at ``P = Q = grade``."""
    if spec.kind is Kind.JAGANNATHAN_SRINIVASA:
        return Fraction(1)
    p, q = spec.p, spec.q
    den = p**grade - q**grade
    if den == 0:
        raise PoleError(f"K(P,Q) is 0/0 at grade {grade}; pass an explicit k_factor")
    return (p - q) * deformed_number(spec, grade) / den


# --------------------------------------------------------------------------
# D_N


def dn_polynomial(N: int) -> Dict[Tuple[int, ...], Fraction]:
    """``det`` of the Newton-type matrix in commuting symbols ``e_1..e_N``
    (entry ``e_{i-c+1}`` on and below the diagonal, ``i`` above it), divided
    by ``N!``.  Keys are exponent vectors of ``e``."""
    if not 1 <= N <= 6:
        raise ParameterDomainError(f"D_N is built for 1 <= N <= 6, got {N}")

    def entry(i, c):  # 0-based row/col -> (symbol index or None, scalar)
        if c <= i:
            return i - c + 1, Fraction(1)
        if c == i + 1:
            return None, Fraction(i + 1)
        return None, Fraction(0)

    out: Dict[Tuple[int, ...], Fraction] = {}
    for perm in permutations(range(N)):
        coeff = Fraction(permutation_sign(perm))
        exps = [0] * N
        for i, c in enumerate(perm):
            sym, s = entry(i, c)
            if s == 0:
                coeff = Fraction(0)
                break
            coeff *= s
            if sym is not None:
                exps[sym - 1] += 1
        if coeff:
            key = tuple(exps)
            out[key] = out.get(key, Fraction(0)) + coeff
    return {k: v / factorial(N) for k, v in out.items() if v}


def dn_operator(N: int, j: int, K: int, cap: int) -> DiffOperator:
    """``D_N`` with ``e_k -> (2jk)! d/dt_{2jk}``; terms needing ``t_{>K}`` are dropped."""
    terms, dropped = [], 0
    for exps, c in sorted(dn_polynomial(N).items()):
        derivs = [0] * K
        scalar = c
        ok = True
        for k, a in enumerate(exps, start=1):
            if not a:
                continue
            idx = 2 * j * k
            if idx > K:
                ok = False
                break
            derivs[idx - 1] += a
            scalar *= Fraction(factorial(idx)) ** a
        if ok:
            terms.append(DiffTerm(TruncatedSeries.one(K, cap, scalar), tuple(derivs)))
        else:
            dropped += 1
    return DiffOperator(K, cap, terms, dropped, f"D_{N}^({j})")


# --------------------------------------------------------------------------
# expanded matrix-model operator


def _prefactors(spec: AlgebraSpec, n: int, N: int, beta: int, j: int, variant: str):
    p, q = spec.p, spec.q
    b = beta * (N - 1)
    if variant == "operator":
        e = j * (n + 1 + b)
        return (q / p) ** e, p**e
    if variant == "expanded":
        return (q / p) ** (j * (n + 1 - b)), p ** (j * (n + 1 + b))
    if variant == "higher":
        return q ** (j * n + j * j - j * j * b), p ** (j * n + j * j * b)
    raise ConfigurationError(f"unknown prefactor variant {variant!r}; use {PREFACTOR_VARIANTS}")


def build_expanded_T(
    spec: AlgebraSpec,
    n: int,
    N: int,
    K: int,
    cap: int,
    j: int = 1,
    beta: int = 1,
    variant: str = "operator",
    k_value: Optional[Rational] = None,
) -> DiffOperator:
    """``K/(p^j - q^j) [A sum_l (l+s)!/l! B_l(t^) D_N d/dt_{l+s} - B n! d/dt_n]``
    with ``s = n - 2jN`` and ``t^_k = (eps1^{jk} - eps2^{jk}) t_k``.

    ``A, B`` follow ``variant`` (see ``PREFACTOR_VARIANTS``); ``K`` is the
    scalar reduction at grade ``n + 1`` unless ``k_value`` is given.
    """
    spec.require_eps_form("build_expanded_T")
    if j < 1:
        raise ParameterDomainError("power j must be >= 1")
    A, B = _prefactors(spec, n, N, beta, j, variant)
    den = spec.p**j - spec.q**j
    if den == 0:
        raise PoleError("p^j = q^j")
    kval = as_fraction(k_value) if k_value is not None else k_factor(powered(spec, j) if j > 1 else spec, n + 1)
    front = kval / den
    e1, e2 = spec.eps1, spec.eps2
    dn = dn_operator(N, j, K, cap)
    s0 = n - 2 * j * N
    L = K * cap
    bells = bell_series(L, K, cap, lambda k: e1 ** (j * k) - e2 ** (j * k))
    terms: List[DiffTerm] = []
    dropped = dn.dropped_terms
    for l in range(L + 1):
        s = l + s0
        if s < 1 or s > K:
            dropped += 1
            continue
        if bells[l].is_zero():
            continue
        base = bells[l].scale(front * A * Fraction(factorial(s), factorial(l)))
        for d in dn.terms:
            derivs = list(d.derivs)
            derivs[s - 1] += 1
            terms.append(DiffTerm(base * d.coeff, tuple(derivs)))
    if 1 <= n <= K:
        terms.append(DiffTerm(TruncatedSeries.one(K, cap, -front * B * factorial(n)), _unit(K, n)))
    else:
        dropped += 1
    if not terms:
        raise ConfigurationError(f"no term of T_{n} fits K={K}, cap={cap} (N={N}, j={j})")
    return DiffOperator(K, cap, terms, dropped, f"T^({j})_{n} [{variant}]")


def _unit(K: int, i: int) -> Tuple[int, ...]:
    d = [0] * K
    d[i - 1] = 1
    return tuple(d)


# --------------------------------------------------------------------------
# toy model


def _toy_sum(spec: AlgebraSpec, a: int, m: int, K: int, cap: int, weight) -> Tuple[List[DiffTerm], int]:
    """``sum_{k>=1} weight(k) (k+m)!/k! B_k(t^a) d/dt_{k+m}``."""
    e1, e2 = spec.eps1, spec.eps2
    bells = bell_series(K, K, cap, lambda k: e1 ** (a * k) - e2 ** (a * k))
    terms, dropped = [], 0
    for k in range(1, K + 1):
        if k + m > K:
            dropped += 1
            continue
        c = weight(k) * Fraction(factorial(k + m), factorial(k))
        if not bells[k].is_zero():
            terms.append(DiffTerm(bells[k].scale(c), _unit(K, k + m)))
    return terms, dropped


def _check_toy(spec: AlgebraSpec, a: int, m: int, gamma: int):
    spec.require_eps_form("toy operators")
    if m < 0:
        raise ParameterDomainError(f"toy operators need m >= 0, got {m}")
    if not isinstance(gamma, int):
        raise ParameterDomainError("gamma must be an integer for exact coefficients")
    if not isinstance(a, int) or a < 1:
        raise ParameterDomainError("power a must be a positive integer")


def build_toy_T(
    spec: AlgebraSpec, a: int, m: int, gamma: int, K: int, cap: int, k_value: Optional[Rational] = None
) -> DiffOperator:
    """``[z d/dz] m! eps1^{-am} d/dt_m + K eps2^{a(m+1+gamma)}/(eps1^a - eps2^a)
    sum_k (k+m)!/k! B_k(t^a) d/dt_{k+m}``.

    The first term carries the formal multiplier under the tag
    ``ZD_TAG``; ``d/dt_0`` acts as the identity (``Z`` carries ``exp(t_0)``).
    ``K`` is reduced at grade ``m + gamma + 1 + k`` per summand unless
    ``k_value`` is given.
    """
    _check_toy(spec, a, m, gamma)
    e1, e2 = spec.eps1, spec.eps2
    sp = powered(spec, a) if a > 1 else spec
    terms: List[DiffTerm] = []
    dropped = 0
    lead = Fraction(factorial(m)) * e1 ** (-a * m)
    if m == 0:
        terms.append(DiffTerm(TruncatedSeries.one(K, cap, lead), (0,) * K, ZD_TAG))
    elif m <= K:
        terms.append(DiffTerm(TruncatedSeries.one(K, cap, lead), _unit(K, m), ZD_TAG))
    else:
        dropped += 1
    pref = e2 ** (a * (m + 1 + gamma)) / (e1**a - e2**a)

    def weight(k):
        kv = as_fraction(k_value) if k_value is not None else k_factor(sp, m + gamma + 1 + k)
        return kv * pref

    more, d2 = _toy_sum(spec, a, m, K, cap, weight)
    return DiffOperator(K, cap, terms + more, dropped + d2, f"toy T^({a})_{m}")


def build_toy_I(spec: AlgebraSpec, a: int, m: int, gamma: int, K: int, cap: int) -> DiffOperator:
    """``tau^{a(m+1+gamma)} sum_k (k+m)!/k! B_k(t^a) d/dt_{k+m}``."""
    _check_toy(spec, a, m, gamma)
    pref = spec.tau ** (a * (m + 1 + gamma))
    terms, dropped = _toy_sum(spec, a, m, K, cap, lambda k: pref)
    return DiffOperator(K, cap, terms, dropped, f"toy I^({a})_{m}")


def toy_partition_series(spec: AlgebraSpec, gamma: int, K: int, cap: int, xi: Rational = 1) -> TruncatedSeries:
    """``Z^toy(t) = sum_n B_n(t)/n! int x^(gamma+n)`` with the bilateral Jackson
    sum over ``[-xi, xi]`` (``t_0 = 0``)."""
    if gamma < 0:
        raise ParameterDomainError("gamma must be >= 0 for a convergent Jackson sum")
    bells = bell_series(K * cap, K, cap)
    acc = TruncatedSeries.zero(K, cap)
    for n, b in enumerate(bells):
        if b.is_zero():
            continue
        acc = acc + b.scale(jackson_monomial(gamma + n, xi, spec) / factorial(n))
    return acc


@dataclass
class ScanRow:
    cap: int
    tagged_norm: Fraction
    plain_norm: Fraction
    dropped: int

    def to_json(self) -> dict:
        return {
            "cap": self.cap,
            "max_abs_tagged": str(self.tagged_norm),
            "max_abs_plain": str(self.plain_norm),
            "dropped": self.dropped,
        }


def toy_annihilation_scan(
    spec: AlgebraSpec, a: int, m: int, gamma: int, K: int, caps: Sequence[int], xi: Rational = 1, which: str = "T"
) -> List[ScanRow]:
    """Exploratory: exact max-norm of ``T Z^toy`` (or ``I Z^toy``) per cap,
    split into the formally tagged and the plain part."""
    rows = []
    for cap in caps:
        Z = toy_partition_series(spec, gamma, K, cap, xi)
        op = build_toy_T(spec, a, m, gamma, K, cap) if which == "T" else build_toy_I(spec, a, m, gamma, K, cap)
        img = op.apply(Z)
        tagged = img.parts.get(ZD_TAG, TruncatedSeries.zero(K, cap))
        plain = img.parts.get("", TruncatedSeries.zero(K, cap))
        rows.append(ScanRow(cap, tagged.max_abs(), plain.max_abs(), img.dropped + op.dropped_terms))
    return rows


__all__ = [
    "ZD_TAG",
    "PREFACTOR_VARIANTS",
    "k_factor",
    "dn_polynomial",
    "dn_operator",
    "build_expanded_T",
    "build_toy_T",
    "build_toy_I",
    "toy_partition_series",
    "toy_annihilation_scan",
    "ScanRow",
]
