"""Complete Bell polynomials, Levi-Civita symbols and the Newton-identity
determinants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Sequence

from .errors import ShapeError, SizeError
from .kernel import Rational, as_fraction
from .laurent import MultiLaurent
from .linsolve import determinant

MAX_BELL = 20


# --------------------------------------------------------------------------
# Bell polynomials


@dataclass(frozen=True)
class BellTable:
    """``B_0 .. B_L`` as exact polynomials in ``t_1 .. t_L`` (arity ``max(L, 1)``)."""

    order: int
    polys: tuple

    @property
    def arity(self) -> int:
        return max(self.order, 1)

    def __getitem__(self, l: int) -> MultiLaurent:
        return self.polys[l]

    def evaluate(self, l: int, ts: Sequence[Rational]) -> Fraction:
        ts = [as_fraction(t) for t in ts] + [Fraction(0)] * (self.arity - len(ts))
        return self.polys[l].evaluate(ts[: self.arity])

    def weighted_degrees_ok(self) -> bool:
        for l, poly in enumerate(self.polys):
            for mono, c in poly.items():
                if sum((i + 1) * e for i, e in enumerate(mono)) != l or c.denominator != 1:
                    return False
        return True


def _t(i: int, arity: int) -> MultiLaurent:
    return MultiLaurent.variable(i - 1, arity)


def bell_complete(L: int) -> BellTable:
    """Recurrence ``B_{n+1} = sum_k C(n,k) B_{n-k} t_{k+1}``."""
    if not 0 <= L <= MAX_BELL:
        raise SizeError(f"Bell order must be in [0, {MAX_BELL}], got {L}")
    ar = max(L, 1)
    B: List[MultiLaurent] = [MultiLaurent.constant(1, ar)]
    for n in range(L):
        acc = MultiLaurent(ar)
        for k in range(n + 1):
            acc = acc + B[n - k] * _t(k + 1, ar) * comb(n, k)
        B.append(acc)
    return BellTable(L, tuple(B))


def _series_exp(coeffs: Sequence[MultiLaurent], order: int, arity: int) -> List[MultiLaurent]:
    """``exp`` of a power series in ``x`` with zero constant term, to ``x^order``."""
    one = MultiLaurent.constant(1, arity)
    result = [one] + [MultiLaurent(arity) for _ in range(order)]
    power = [one] + [MultiLaurent(arity) for _ in range(order)]
    for j in range(1, order + 1):
        nxt = [MultiLaurent(arity) for _ in range(order + 1)]
        for d1, a in enumerate(power):
            if a.is_zero():
                continue
            for d2 in range(1, order + 1 - d1):
                if not coeffs[d2].is_zero():
                    nxt[d1 + d2] = nxt[d1 + d2] + a * coeffs[d2]
        power = nxt
        inv = Fraction(1, factorial(j))
        for d in range(order + 1):
            if not power[d].is_zero():
                result[d] = result[d] + power[d] * inv
    return result


def _exp_series_args(L: int, scale=lambda k: 1) -> List[MultiLaurent]:
    ar = max(L, 1)
    S = [MultiLaurent(ar)] + [_t(s, ar) * (Fraction(scale(s)) / factorial(s)) for s in range(1, L + 1)]
    return S


def bell_from_exponential(L: int) -> List[MultiLaurent]:
    """Independent oracle: ``n! [x^n] exp(sum t_s x^s / s!)``."""
    ar = max(L, 1)
    E = _series_exp(_exp_series_args(L), L, ar)
    return [E[n] * factorial(n) for n in range(L + 1)]


def _substitute_scaled(poly: MultiLaurent, factors: Sequence[Fraction]) -> MultiLaurent:
    """``t_i -> factors[i] * t_i``."""
    out = {}
    for mono, c in poly.items():
        v = c
        for f, e in zip(factors, mono):
            v *= f**e
        out[mono] = v
    return MultiLaurent(poly.arity, out)


@dataclass(frozen=True)
class BellIdentityRow:
    l: int
    lhs: MultiLaurent
    rhs: MultiLaurent

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def bell_scaled_identity(L: int, q: Rational) -> dict:
    """Check ``B_l(t~) = sum_nu q^nu C(l,nu) B_nu(t) B_{l-nu}(-t)`` with
    ``t~_k = (q^k - 1) t_k``, and the generating-series form of the same
    identity to ``x^L``."""
    if L > 15:
        raise SizeError(f"scaled Bell identity is checked up to L=15, got {L}")
    q = as_fraction(q)
    tab = bell_complete(L)
    ar = tab.arity
    tilde = [q ** (k + 1) - 1 for k in range(ar)]
    neg = [Fraction(-1)] * ar
    rows = []
    for l in range(L + 1):
        lhs = _substitute_scaled(tab[l], tilde)
        rhs = MultiLaurent(ar)
        for nu in range(l + 1):
            rhs = rhs + tab[nu] * _substitute_scaled(tab[l - nu], neg) * (q**nu * comb(l, nu))
        rows.append(BellIdentityRow(l, lhs, rhs))

    # exp(sum t_k q^k x^k/k!) == sum_k B_k(t~) x^k/k! * exp(sum t_l x^l/l!)
    left = _series_exp(_exp_series_args(L, lambda k: q**k), L, ar)
    base = _series_exp(_exp_series_args(L), L, ar)
    right = [MultiLaurent(ar) for _ in range(L + 1)]
    for k in range(L + 1):
        bk = _substitute_scaled(tab[k], tilde) * Fraction(1, factorial(k))
        for d in range(L + 1 - k):
            right[k + d] = right[k + d] + bk * base[d]
    series_ok = all(a == b for a, b in zip(left, right))
    return {"rows": rows, "polynomial_identity": all(r.passed for r in rows), "series_identity": series_ok}


# --------------------------------------------------------------------------
# permutations


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of ``0..n-1`` (or of any distinct sequence)."""
    seen = sorted(perm)
    pos = {v: i for i, v in enumerate(seen)}
    p = [pos[v] for v in perm]
    sign, visited = 1, [False] * len(p)
    for i in range(len(p)):
        if visited[i]:
            continue
        j, length = i, 0
        while not visited[j]:
            visited[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def levi_civita(upper: Sequence[int], lower: Sequence[int]) -> int:
    """Generalized Kronecker delta ``det(delta^{upper_a}_{lower_b})``."""
    if len(upper) != len(lower):
        raise ShapeError("index lists must have equal length")
    if len(upper) > 6:
        raise SizeError("at most 6 indices")
    if len(set(upper)) != len(upper) or len(set(lower)) != len(lower) or set(upper) != set(lower):
        return 0
    where = {v: i for i, v in enumerate(lower)}
    return permutation_sign([where[v] for v in upper])


# --------------------------------------------------------------------------
# Newton identities


def power_sums(z: Sequence[Fraction], K: int) -> List[Fraction]:
    """``[nu_0, nu_1, ..., nu_K]``."""
    return [sum((x**k for x in z), Fraction(0)) for k in range(K + 1)]


def newton_matrix(nu: Sequence[Fraction], N: int) -> List[List[Fraction]]:
    """Lower-Hessenberg matrix with ``nu_{i-j+1}`` and superdiagonal ``i``."""
    M = [[Fraction(0)] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            if j <= i:
                M[i][j] = Fraction(nu[i - j + 1])
            elif j == i + 1:
                M[i][j] = Fraction(i + 1)
    return M


def newton_product(z: Sequence[Rational]) -> tuple[Fraction, Fraction]:
    """``(prod z_i, det(newton matrix)/N!)``."""
    z = [as_fraction(x) for x in z]
    N = len(z)
    if not 1 <= N <= 8:
        raise SizeError(f"newton_product needs 1 <= N <= 8, got {N}")
    prod = Fraction(1)
    for x in z:
        prod *= x
    nu = power_sums(z, N)
    return prod, determinant(newton_matrix(nu, N)) / factorial(N)


def dN_substitution(z: Sequence[Rational]) -> tuple[Fraction, Fraction]:
    """``(prod z_i^2, D_N with (2k)! d/dt_{2k} -> nu_{2k})``."""
    z = [as_fraction(x) for x in z]
    N = len(z)
    if not 1 <= N <= 6:
        raise SizeError(f"dN_substitution needs 1 <= N <= 6, got {N}")
    prod = Fraction(1)
    for x in z:
        prod *= x * x
    nu = power_sums(z, 2 * N)
    even = [Fraction(0)] + [nu[2 * k] for k in range(1, N + 1)]
    return prod, determinant(newton_matrix(even, N)) / factorial(N)
