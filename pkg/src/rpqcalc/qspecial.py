"""Deformed special functions as truncated products, and the Jackson sum.

Infinite products ``prod_j (u - gamma_j)`` with ``u != 0`` only converge
after the constant ``u`` is factored out of every term.  Every infinite
product is therefore reported as the convergent mantissa

    prod_j (1 - gamma_j / u)

together with the number of stripped ``u`` factors (``u_power``).  For
``u = 1`` the mantissa is the product itself; for ``u = 0`` the plain
product is returned.  Ratios of infinite products over the same grid, such
as the Pochhammer ratio identity, are exact under this bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Callable, Optional, Union

import mpmath

from .errors import DivergenceError, ParameterDomainError, PoleError
from .kernel import AlgebraSpec, Rational, as_fraction
from .laurent import LaurentPoly

DEFAULT_DPS = 30
INFINITY = "inf"

Scalar = Union[Rational, float, complex, "mpmath.mpf", "mpmath.mpc"]


def to_mp(x: Scalar):
    """Exact-ish conversion of Fractions, ints, strings and floats to mpmath."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return x
    if isinstance(x, str):
        return to_mp(as_fraction(x))
    if isinstance(x, complex):
        return mpmath.mpc(x)
    if isinstance(x, Number):
        return mpmath.mpf(x)
    raise ParameterDomainError(f"not a scalar: {x!r}")


def _fmt(x) -> str:
    return mpmath.nstr(x, 20) if x is not None else "null"


@dataclass(frozen=True)
class ProductValue:
    value: object  # mpf or mpc
    K: int
    tail_bound: object
    u_power: int = 0  # u factors stripped from the displayed value
    u_power_convergent: bool = True  # |u| <= 1: the unnormalized product has a limit too
    exact: Optional[Fraction] = None  # finite products of rationals

    def to_json(self) -> dict:
        out = {
            "value": _fmt(self.value),
            "K": self.K,
            "tail_bound": _fmt(self.tail_bound),
            "u_power": self.u_power,
            "u_power_convergent": self.u_power_convergent,
        }
        if self.exact is not None:
            out["exact"] = str(self.exact)
        return out


@dataclass(frozen=True)
class PochWeight:
    """Scalar reduction of the factor generator ``gamma_j(z) = r^j z g``.

    ``r = q/p`` is the grid ratio, ``g`` the scalar value assigned to the
    operator-valued factor (1 by default); ``w`` switches on the elliptic
    grid ``r^j w^k``.
    """

    r: object
    g: object = 1
    w: object = None

    @classmethod
    def of(cls, spec: AlgebraSpec, g: Scalar = 1, w: Scalar = None, square: bool = False):
        r = spec.q / spec.p
        if square:
            r = r * r
        return cls(to_mp(r), to_mp(g), None if w is None else to_mp(w))

    def gamma(self, z, j: int, k: int = 0):
        out = self.r**j * z * self.g
        return out if self.w is None else out * self.w**k


def _check_ratio(r, what="|q/p|"):
    if abs(r) >= 1:
        raise DivergenceError(f"{what} = {mpmath.nstr(abs(r), 8)} >= 1: the infinite product diverges")


def _normalized_product(u, xs_rows, outer_sum):
    """Multiply ``(1 - x/u)`` (or ``-x`` when ``u = 0``) over the rows.

    ``outer_sum`` bounds ``sum |x/u|`` over the omitted factors.
    """
    val = mpmath.mpf(1)
    n = 0
    for x, where in xs_rows:
        f = -x if u == 0 else 1 - x / u
        if f == 0:
            raise PoleError(f"factor vanishes at grid index {where}")
        val *= f
        n += 1
    if u == 0:
        return val, abs(val), 0
    return val, abs(val) * mpmath.expm1(outer_sum), n


def pochhammer(
    u: Scalar,
    z: Scalar,
    spec: AlgebraSpec,
    n: Union[int, str] = INFINITY,
    K: int = 200,
    g: Scalar = 1,
    dps: int = DEFAULT_DPS,
) -> ProductValue:
    """``(u, z; R(p,q))_n``: ``n`` factors ``u - (q/p)^j z g``, ``j < n``.

    ``n = "inf"`` gives the truncated infinite product with ``K`` factors.
    """
    with mpmath.workdps(dps):
        wt = PochWeight.of(spec, g)
        um, zm = to_mp(u), to_mp(z)
        if n != INFINITY:
            if not isinstance(n, int) or n < 0:
                raise ParameterDomainError(f"order must be a non-negative integer or 'inf', got {n!r}")
            val = mpmath.mpf(1)
            for j in range(n):
                val *= um - wt.gamma(zm, j)
            exact = None
            if all(isinstance(v, (int, Fraction, str)) for v in (u, z, g)):
                r, ue, ze, ge = spec.q / spec.p, as_fraction(u), as_fraction(z), as_fraction(g)
                exact = Fraction(1)
                for j in range(n):
                    exact *= ue - r**j * ze * ge
                val = to_mp(exact)
            return ProductValue(+val, n, mpmath.mpf(0), 0, True, exact)
        _check_ratio(wt.r)
        if K < 1:
            raise ParameterDomainError("truncation depth K must be positive")
        rows = ((wt.gamma(zm, j), (j,)) for j in range(K))
        outer = 0 if um == 0 else abs(zm * wt.g / um) * abs(wt.r) ** K / (1 - abs(wt.r))
        val, tail, power = _normalized_product(um, rows, outer)
        return ProductValue(+val, K, +tail, power, abs(um) <= 1)


def pochhammer_ratio_check(u, z, spec, n: int, K: int = 200, g=1, dps=DEFAULT_DPS) -> dict:
    """Both sides of ``(u,z)_n = (u,z)_inf / (u, z (q/p)^n)_inf``."""
    with mpmath.workdps(dps):
        finite = pochhammer(u, z, spec, n, K, g, dps).value
        top = pochhammer(u, z, spec, INFINITY, K, g, dps)
        shifted_z = to_mp(z) * to_mp(spec.q / spec.p) ** n
        bottom = pochhammer(u, shifted_z, spec, INFINITY, K, g, dps)
        um = to_mp(u)
        ratio = (um**n if um != 0 else 1) * top.value / bottom.value
        err = abs(finite - ratio)
        return {"finite": finite, "ratio": ratio, "abs_error": err, "rel_error": err / max(abs(finite), mpmath.mpf(10) ** -dps)}


def _q_pochhammer_w(u, z, w, K: int):
    """``(u, z; w)_inf`` on the single ``w`` grid."""
    _check_ratio(w, "|w|")
    rows = ((w**j * z, (j,)) for j in range(K))
    outer = 0 if u == 0 else abs(z / u) * abs(w) ** K / (1 - abs(w))
    return _normalized_product(u, rows, outer)


def theta(u: Scalar, z: Scalar, w: Scalar, K: int = 100, dps: int = DEFAULT_DPS) -> ProductValue:
    """``theta_w(u, z) = (u, z; w)_inf (u, w/z; w)_inf``."""
    with mpmath.workdps(dps):
        um, zm, wm = to_mp(u), to_mp(z), to_mp(w)
        if zm == 0:
            raise ParameterDomainError("theta needs z != 0")
        a, ta, na = _q_pochhammer_w(um, zm, wm, K)
        b, tb, nb = _q_pochhammer_w(um, wm / zm, wm, K)
        val = a * b
        tail = abs(a) * tb + abs(b) * ta + ta * tb
        return ProductValue(+val, K, +tail, na + nb, abs(um) <= 1)


def _double_product(u, z, wt: PochWeight, K: int, cutoff):
    """``prod_{j,k<K} (1 - r^j w^k z g / u)``; negligible factors are skipped
    and added to the tail estimate."""
    ar, aw = abs(wt.r), abs(wt.w)
    _check_ratio(wt.r)
    _check_ratio(wt.w, "|w|")
    base = abs(z * wt.g / u) if u != 0 else abs(z * wt.g)
    total = base / ((1 - ar) * (1 - aw))
    inside = base * (1 - ar**K) * (1 - aw**K) / ((1 - ar) * (1 - aw))
    skipped = mpmath.mpf(0)
    val = mpmath.mpf(1)
    power = 0
    r, w = wt.r, wt.w
    # x runs over gamma_(j,k)/u (gamma_(j,k) when u = 0) by repeated multiplication
    row = z * wt.g / u if u != 0 else z * wt.g
    for k in range(K):
        x = row
        for j in range(K):
            if u != 0 and abs(x) < cutoff:
                # the rest of this row is geometrically smaller still
                skipped += abs(x) * (1 - ar ** (K - j)) / (1 - ar)
                power += K - j
                break
            f = 1 - x if u != 0 else -x
            if f == 0:
                raise PoleError(f"factor u - gamma_(j,k) vanishes at (j, k) = ({j}, {k})")
            val *= f
            power += 1
            x *= r
        row *= w
    if u == 0:
        return val, abs(val), 0
    outer = total - inside + skipped
    return val, abs(val) * mpmath.expm1(outer), power


def elliptic_pochhammer(
    u: Scalar, z: Scalar, w: Scalar, spec: AlgebraSpec, K: int = 150, g: Scalar = 1, dps: int = DEFAULT_DPS
) -> ProductValue:
    """``(u, z; R(p,q), w)_inf`` over the grid ``(q/p)^j w^k``."""
    with mpmath.workdps(dps):
        um, zm = to_mp(u), to_mp(z)
        wt = PochWeight.of(spec, g, w)
        val, tail, power = _double_product(um, zm, wt, K, mpmath.mpf(10) ** -(dps + 5))
        return ProductValue(+val, K, +tail, power, abs(um) <= 1)


@dataclass(frozen=True)
class GammaValue:
    value: object
    numerator: ProductValue
    denominator: ProductValue
    K: int
    tail_bound: object

    def recomposition_error(self):
        """``|Gamma * den - num|`` relative to ``|num|``."""
        num = self.numerator.value
        return abs(self.value * self.denominator.value - num) / max(abs(num), mpmath.mpf(10) ** -40)

    def to_json(self) -> dict:
        return {
            "value": _fmt(self.value),
            "K": self.K,
            "tail_bound": _fmt(self.tail_bound),
            "numerator": self.numerator.to_json(),
            "denominator": self.denominator.to_json(),
        }


def elliptic_gamma(
    u: Scalar, z: Scalar, w: Scalar, spec: AlgebraSpec, K: int = 150, g: Scalar = 1, dps: int = DEFAULT_DPS
) -> GammaValue:
    """``Gamma(u, z; w, R(p,q)) = (u, q w / z; w)_inf / (u, z; w)_inf``.

    Both products strip the same number of ``u`` factors, so the ratio is
    independent of the normalization.
    """
    with mpmath.workdps(dps):
        zm = to_mp(z)
        if zm == 0:
            raise ParameterDomainError("elliptic gamma needs z != 0")
        num = elliptic_pochhammer(u, to_mp(spec.q) * to_mp(w) / zm, w, spec, K, g, dps)
        try:
            den = elliptic_pochhammer(u, zm, w, spec, K, g, dps)
        except PoleError as exc:
            raise PoleError(f"elliptic gamma denominator: {exc}") from None
        # both products carry K*K factors (skipped ones are counted), so the
        # stripped u powers cancel
        val = num.value / den.value
        rel = (num.tail_bound / abs(num.value) if num.value else 0) + (
            den.tail_bound / abs(den.value) if den.value else 0
        )
        return GammaValue(+val, num, den, K, abs(val) * rel)


def gaussian_density(
    z: Scalar,
    u: Scalar,
    xi: Scalar,
    spec: AlgebraSpec,
    K: int = 200,
    w: Scalar = None,
    g: Scalar = 1,
    dps: int = DEFAULT_DPS,
) -> ProductValue:
    """``rho(z) = (u, q^2 z^2 / xi^2; R(p^2, q^2))_inf`` (elliptic with ``w``)."""
    with mpmath.workdps(dps):
        xim = to_mp(xi)
        if xim == 0:
            raise ParameterDomainError("xi must be nonzero")
        qm = to_mp(spec.q)
        arg = (qm * to_mp(z) / xim) ** 2
        um = to_mp(u)
        if w is None:
            wt = PochWeight.of(spec, g, square=True)
            _check_ratio(wt.r, "|q/p|^2")
            rows = ((wt.gamma(arg, j), (j,)) for j in range(K))
            outer = 0 if um == 0 else abs(arg * wt.g / um) * abs(wt.r) ** K / (1 - abs(wt.r))
            val, tail, power = _normalized_product(um, rows, outer)
        else:
            wt = PochWeight.of(spec, g, w, square=True)
            val, tail, power = _double_product(um, arg, wt, K, mpmath.mpf(10) ** -(dps + 5))
        return ProductValue(+val, K, +tail, power, abs(um) <= 1)


# --------------------------------------------------------------------------
# Jackson integral


@dataclass(frozen=True)
class IntegralValue:
    value: object
    K: int
    tail_bound: object
    exact: Optional[Fraction] = None  # closed form, available for Laurent integrands
    note: str = ""

    def to_json(self) -> dict:
        out = {"value": _fmt(self.value), "K": self.K, "tail_bound": _fmt(self.tail_bound)}
        if self.exact is not None:
            out["exact"] = str(self.exact)
        if self.note:
            out["note"] = self.note
        return out


GRID_NOTE = "grid points xi q^k/p^(k+1) may lie outside [-xi, xi] when p < 1; the sum is the formal convergent series"


def jackson_monomial(n: int, xi: Rational, spec: AlgebraSpec, one_sided: bool = False) -> Fraction:
    """Closed form of the Jackson sum of ``z^n``: ``xi^(n+1) / [n+1]_{p,q}``
    over ``[0, xi]`` (two-parameter number ``(p^k - q^k)/(p - q)``), and
    ``(1 + (-1)^n)`` times that over ``[-xi, xi]``."""
    if n % 2 and not one_sided:
        return Fraction(0)
    p, q, xi = spec.p, spec.q, as_fraction(xi)
    if n + 1 <= 0:
        raise DivergenceError(f"Jackson sum of z^{n} diverges")
    half = xi ** (n + 1) * (p - q) / (p ** (n + 1) - q ** (n + 1))
    return half if one_sided else 2 * half


def jackson_integral(
    f: Union[LaurentPoly, Callable],
    xi: Scalar,
    spec: AlgebraSpec,
    K: int = 300,
    dps: int = DEFAULT_DPS,
    parity: Optional[str] = None,
    one_sided: bool = False,
) -> IntegralValue:
    """Truncated bilateral sum
    ``(p - q) xi sum_{k<K} q^k/p^(k+1) [f(x_k) + f(-x_k)]``, ``x_k = xi q^k/p^(k+1)``;
    ``one_sided`` keeps only ``f(x_k)`` (the integral over ``[0, xi]``).

    Laurent integrands also get the exact closed form; odd monomials drop out
    of the bilateral sum exactly.  For a callable, pass ``parity="odd"`` to
    short-circuit.
    """
    p, q = spec.p, spec.q
    if q / p >= 1 or q / p <= -1:
        raise DivergenceError(f"|q/p| = {abs(q / p)} >= 1: the Jackson sum diverges")
    with mpmath.workdps(dps):
        pm, qm, xim = to_mp(p), to_mp(q), to_mp(xi)
        r = qm / pm
        if isinstance(f, LaurentPoly):
            even = [(n, c) for n, c in f.items() if (one_sided or n % 2 == 0) and c != 0]
            if not even:
                return IntegralValue(mpmath.mpf(0), K, mpmath.mpf(0), Fraction(0), "odd integrand")
            for n, _ in even:
                if n < 0:
                    raise DivergenceError(f"Jackson sum of z^{n} diverges at the origin")
            exact = None
            if isinstance(xi, (int, Fraction, str)):
                exact = sum((c * jackson_monomial(n, xi, spec, one_sided) for n, c in even), Fraction(0))
            total = mpmath.mpf(0)
            tail = mpmath.mpf(0)
            for n, c in even:
                cm = to_mp(c)
                # 2 (p-q) xi^(n+1) / p^(n+1) * sum_k r^(k(n+1))
                lead = (1 if one_sided else 2) * (pm - qm) * xim ** (n + 1) / pm ** (n + 1)
                s = mpmath.fsum(r ** (k * (n + 1)) for k in range(K))
                total += cm * lead * s
                tail += abs(cm * lead) * abs(r) ** (K * (n + 1)) / (1 - abs(r) ** (n + 1))
            return IntegralValue(+total, K, +tail, exact, GRID_NOTE)
        if parity == "odd" and not one_sided:
            return IntegralValue(mpmath.mpf(0), K, mpmath.mpf(0), None, "odd integrand")
        terms = []
        for k in range(K):
            x = xim * r**k / pm
            terms.append(r**k / pm * (f(x) if one_sided else f(x) + f(-x)))
        total = (pm - qm) * xim * mpmath.fsum(terms)
        last = abs((pm - qm) * xim * terms[-1]) if terms else mpmath.mpf(0)
        # estimate: geometric continuation of the last term
        return IntegralValue(+total, K, last * abs(r) / (1 - abs(r)), None, GRID_NOTE)


__all__ = [
    "DEFAULT_DPS",
    "INFINITY",
    "to_mp",
    "ProductValue",
    "PochWeight",
    "pochhammer",
    "pochhammer_ratio_check",
    "theta",
    "elliptic_pochhammer",
    "GammaValue",
    "elliptic_gamma",
    "gaussian_density",
    "IntegralValue",
    "jackson_monomial",
    "jackson_integral",
    "GRID_NOTE",
]
