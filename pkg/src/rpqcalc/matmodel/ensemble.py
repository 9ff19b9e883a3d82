"""Eigenvalue ensembles: Gaussian-density moments and partition functions.

All integrals are bilateral Jackson sums over the grid ``x_k = xi r^k / p``
(``r = q/p``, ``k < K``).  The density is the convergent mantissa of the
infinite product (see :mod:`rpqcalc.qspecial`), so absolute values of
partition functions are defined up to the stripped ``u`` power; moments and
normalized ratios are unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import mpmath

from ..errors import ConfigurationError, DivergenceError, ParameterDomainError, PoleError, SizeError
from ..kernel import AlgebraSpec, Rational, as_fraction
from ..laurent import MultiLaurent
from ..qspecial import DEFAULT_DPS, elliptic_pochhammer, gaussian_density, theta, to_mp

MAX_N = 4
MAX_MONOMIALS = 50_000
MAX_NESTED_POINTS = 200_000


@dataclass(frozen=True)
class EnsembleConfig:
    spec: AlgebraSpec
    N: int = 1
    beta: int = 1
    u: Fraction = Fraction(1)
    xi: Fraction = Fraction(1)
    K: int = 300
    w: Optional[Fraction] = None
    g: Fraction = Fraction(1)
    product_K: Optional[int] = None  # product depth of the elliptic double grid
    dps: int = DEFAULT_DPS

    def __post_init__(self):
        for name in ("u", "xi", "g"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.w is not None:
            object.__setattr__(self, "w", as_fraction(self.w))
        if not 1 <= self.N <= MAX_N:
            raise SizeError(f"N must be in [1, {MAX_N}], got {self.N}")
        if not isinstance(self.beta, int) or self.beta < 1:
            raise ParameterDomainError(f"beta must be a positive integer, got {self.beta!r}")
        if self.xi == 0:
            raise ParameterDomainError("xi must be nonzero")
        if self.K < 1:
            raise ParameterDomainError("K must be positive")
        r = self.spec.q / self.spec.p
        if abs(r) >= 1:
            raise DivergenceError(f"|q/p| = {abs(r)} >= 1: density and grid sums diverge")

    @property
    def r(self) -> Fraction:
        return self.spec.q / self.spec.p

    @property
    def elliptic(self) -> bool:
        return self.w is not None

    def to_json(self) -> dict:
        return {
            "algebra": self.spec.digest(),
            "N": self.N,
            "beta": self.beta,
            "u": str(self.u),
            "xi": str(self.xi),
            "K": self.K,
            "w": None if self.w is None else str(self.w),
            "g": str(self.g),
        }


@dataclass(frozen=True)
class MomentValue:
    value: object
    K: int
    tail_bound: object
    exact: Optional[Fraction] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"value": mpmath.nstr(self.value, 20), "K": self.K, "tail_bound": mpmath.nstr(self.tail_bound, 5)}
        if self.exact is not None:
            out["exact"] = str(self.exact)
        if self.note:
            out["note"] = self.note
        return out


# --------------------------------------------------------------------------
# density on the grid


@lru_cache(maxsize=64)
def _grid(config: EnsembleConfig):
    """``[(x_k, weight_k * rho(x_k))]`` for ``k < K`` at the config precision."""
    spec = config.spec
    with mpmath.workdps(config.dps):
        pm, qm, xim = to_mp(spec.p), to_mp(spec.q), to_mp(config.xi)
        r = qm / pm
        pts = []
        depth = config.product_K or (min(config.K, 40) if config.elliptic else config.K)
        for k in range(config.K):
            x = xim * r**k / pm
            rho = gaussian_density(x, config.u, config.xi, spec, depth, config.w, config.g, config.dps).value
            pts.append((x, (pm - qm) * xim * r**k / pm * rho))
        return tuple(pts)


def _one_dim_moment(config: EnsembleConfig, n: int):
    """Bilateral sum of ``rho(z) z^n``; zero for odd ``n``."""
    if n % 2:
        return mpmath.mpf(0)
    if n < 0:
        raise DivergenceError(f"moment of z^{n} diverges at the origin")
    with mpmath.workdps(config.dps):
        return 2 * mpmath.fsum(w * x**n for x, w in _grid(config))


def _grid_tail(config: EnsembleConfig, n: int):
    """Bound on the omitted grid terms of the ``z^n`` sum (density bounded by
    ``exp(|g/u| / (1 - r^2))``)."""
    with mpmath.workdps(config.dps):
        r = abs(to_mp(config.r))
        pm, qm, xim = to_mp(config.spec.p), to_mp(config.spec.q), abs(to_mp(config.xi))
        rho_max = mpmath.exp(abs(to_mp(config.g / config.u)) / (1 - r * r)) if config.u else mpmath.mpf(1)
        lead = 2 * abs(pm - qm) * xim * (xim / abs(pm)) ** n / abs(pm)
        return lead * rho_max * r ** (config.K * (n + 1)) / (1 - r ** (n + 1))


def moment_quadrature(config: EnsembleConfig, k: int) -> MomentValue:
    """``<z^k> = int rho z^k / int rho`` by matched Jackson sums."""
    if k < 0:
        raise ParameterDomainError("moment order must be non-negative")
    if k % 2:
        return MomentValue(mpmath.mpf(0), config.K, mpmath.mpf(0), Fraction(0), "odd order")
    with mpmath.workdps(config.dps):
        den = _one_dim_moment(config, 0)
        if den == 0:
            raise PoleError("the density integrates to zero")
        num = den if k == 0 else _one_dim_moment(config, k)
        val = num / den
        tail = (_grid_tail(config, k) + abs(val) * _grid_tail(config, 0)) / abs(den)
        return MomentValue(+val, config.K, +tail, Fraction(1) if k == 0 else None)


def moment_closed(config: EnsembleConfig, k: int) -> MomentValue:
    """The displayed closed form ``(1/2) xi^k prod_{i<=k/2} (u - r^(2i-1) g)``;
    elliptic: ``xi^k prod theta_w(u, q^(2i-1))``.  Odd ``k`` gives 0."""
    config.spec.require_eps_form("moment_closed")
    if k < 0:
        raise ParameterDomainError("moment order must be non-negative")
    if k % 2:
        return MomentValue(mpmath.mpf(0), config.K, mpmath.mpf(0), Fraction(0), "odd order")
    if config.elliptic:
        with mpmath.workdps(config.dps):
            val = to_mp(config.xi) ** k
            tail = mpmath.mpf(0)
            for i in range(1, k // 2 + 1):
                t = theta(config.u, config.spec.q ** (2 * i - 1), config.w, config.product_K or 100, config.dps)
                val *= t.value
                tail += t.tail_bound / max(abs(t.value), mpmath.mpf(10) ** -config.dps)
            return MomentValue(+val, config.K, abs(val) * tail)
    exact = Fraction(1, 2) * config.xi**k
    for i in range(1, k // 2 + 1):
        exact *= config.u - config.r ** (2 * i - 1) * config.g
    with mpmath.workdps(config.dps):
        return MomentValue(to_mp(exact), config.K, mpmath.mpf(0), exact)


def moment_series(config: EnsembleConfig, k: int, terms: Optional[int] = None) -> MomentValue:
    """Independent evaluation of the quadrature moment.

    With ``a = g/u`` and ``Q = r^2`` the grid density is
    ``(aQ;Q)_inf / (aQ;Q)_j`` at grid point ``j``, so

        <z^(2n)> = (xi/p)^(2n) S(r Q^n) / S(r),   S(x) = sum_j x^j / (aQ;Q)_j.

    At ``a = 1`` Euler's identity collapses this to
    ``(xi/p)^(2n) prod_{i<n} (1 - r^(2i+1))``.
    """
    if config.elliptic:
        raise ConfigurationError("moment_series covers the non-elliptic density only")
    if k % 2:
        return MomentValue(mpmath.mpf(0), config.K, mpmath.mpf(0), Fraction(0), "odd order")
    if config.u == 0:
        raise ParameterDomainError("moment_series needs u != 0")
    n = k // 2
    a, r = config.g / config.u, config.r
    J = terms or config.K
    if a == 1:
        exact = (config.xi / config.spec.p) ** k
        for i in range(n):
            exact *= 1 - r ** (2 * i + 1)
        with mpmath.workdps(config.dps):
            return MomentValue(to_mp(exact), J, mpmath.mpf(0), exact, "finite product (a = 1)")
    with mpmath.workdps(config.dps):
        am, rm = to_mp(a), to_mp(r)
        Qm = rm * rm

        def S(x):
            total, poch = mpmath.mpf(0), mpmath.mpf(1)
            for j in range(J):
                total += x**j / poch
                poch *= 1 - am * Qm ** (j + 1)
                if poch == 0:
                    raise PoleError(f"(aQ;Q)_{j + 1} vanishes")
            return total

        val = (to_mp(config.xi) / to_mp(config.spec.p)) ** k * S(rm * Qm**n) / S(rm)
        return MomentValue(+val, J, abs(val) * abs(rm) ** J * 4, None, "basic hypergeometric ratio")


# --------------------------------------------------------------------------
# criterion-style comparison


@dataclass
class NormalizationCertificate:
    rows: List[dict] = field(default_factory=list)
    outcome: str = ""  # "agree" | "constant-factor" | "neither"
    factors: List[object] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return {"agree": "tolerance-pass", "constant-factor": "logged-discrepancy"}.get(self.outcome, "fail")

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "verdict": self.verdict,
            "factors": [mpmath.nstr(f, 15) for f in self.factors],
            "rows": self.rows,
        }


def normalization_certificate(
    configs: Sequence[EnsembleConfig], ks: Sequence[int] = (2, 4, 6), tol: float = 1e-8
) -> NormalizationCertificate:
    """Closed form versus quadrature: full agreement, or a per-configuration
    constant ratio quadrature/closed across ``ks``, or neither."""
    cert = NormalizationCertificate()
    agree, constant = True, True
    for cfg in configs:
        ratios = []
        for k in ks:
            qv = moment_quadrature(cfg, k).value
            cv = moment_closed(cfg, k).value
            ratio = qv / cv if cv != 0 else mpmath.inf
            ratios.append(ratio)
            rel = abs(qv - cv) / max(abs(qv), mpmath.mpf(10) ** -30)
            agree = agree and rel <= tol
            cert.rows.append(
                {
                    "config": cfg.to_json(),
                    "k": k,
                    "quadrature": mpmath.nstr(qv, 15),
                    "closed": mpmath.nstr(cv, 15),
                    "ratio": mpmath.nstr(ratio, 15),
                }
            )
        spread = max(abs(x - ratios[0]) for x in ratios) / max(abs(ratios[0]), mpmath.mpf(10) ** -30)
        constant = constant and spread <= tol
        cert.factors.append(ratios[0])
    cert.outcome = "agree" if agree else ("constant-factor" if constant else "neither")
    return cert


# --------------------------------------------------------------------------
# partition function


def _require_rational(config: EnsembleConfig):
    return config.u, config.g, config.r


def interaction_polynomial(config: EnsembleConfig) -> MultiLaurent:
    """``prod_i z_i^{beta(N-1)} prod_{i != j} (u, z_i/z_j)_beta`` exactly."""
    N, beta = config.N, config.beta
    u, g, r = _require_rational(config)
    out = MultiLaurent.constant(1, N)
    for i in range(N):
        e = [0] * N
        e[i] = beta * (N - 1)
        out = out * MultiLaurent.monomial(e)
    for i in range(N):
        for j in range(N):
            if i == j:
                continue
            e = [0] * N
            e[i], e[j] = 1, -1
            ratio = MultiLaurent.monomial(e)
            for l in range(beta):
                out = out * (MultiLaurent.constant(u, N) - ratio * (r**l * g))
    return out


def coupling_exponential(N: int, couplings: Mapping[int, Rational], cap: int) -> MultiLaurent:
    """``exp(sum_{i,k} p_k z_i^k / k)`` truncated at total coupling degree ``cap``."""
    arg = MultiLaurent(N)
    for k, pk in sorted(couplings.items()):
        if k < 1:
            raise ParameterDomainError(f"coupling index must be >= 1, got {k}")
        pk = as_fraction(pk)
        if pk == 0:
            continue
        for i in range(N):
            e = [0] * N
            e[i] = k
            arg = arg + MultiLaurent.monomial(e, pk / k)
    out = MultiLaurent.constant(1, N)
    power = MultiLaurent.constant(1, N)
    for m in range(1, cap + 1):
        power = power * arg
        if power.is_zero():
            break
        if len(power) > MAX_MONOMIALS:
            raise SizeError(f"exponential expansion exceeds {MAX_MONOMIALS} monomials")
        out = out + power * Fraction(1, factorial(m))
    return out


@dataclass
class PartitionValue:
    value: object
    K: int
    cap: int
    tail_bound: object
    terms: List[Tuple[Tuple[int, ...], Fraction, object]]  # (z exponents, exact coefficient, moment product)
    note: str = ""

    def to_json(self) -> dict:
        return {
            "value": mpmath.nstr(self.value, 20),
            "K": self.K,
            "cap": self.cap,
            "tail_bound": mpmath.nstr(self.tail_bound, 5),
            "terms": len(self.terms),
            "note": self.note,
        }


def partition_eigenvalue(config: EnsembleConfig, couplings: Optional[Mapping[int, Rational]] = None, cap: int = 6) -> PartitionValue:
    """``Z_N(p)`` by exact expansion of the polynomial part of the integrand;
    each monomial integrates to a product of one-dimensional Jackson moments,
    which equals the nested sum over the truncated grids exactly."""
    if config.elliptic:
        raise ConfigurationError("use partition_nested for the elliptic model")
    couplings = dict(couplings or {})
    poly = interaction_polynomial(config) * coupling_exponential(config.N, couplings, cap)
    if len(poly) > MAX_MONOMIALS:
        raise SizeError(f"integrand has {len(poly)} monomials (limit {MAX_MONOMIALS})")
    moments: Dict[int, object] = {}
    tails: Dict[int, object] = {}
    terms = []
    with mpmath.workdps(config.dps):
        total = mpmath.mpf(0)
        tail = mpmath.mpf(0)
        for exps, c in poly.items():
            if any(e % 2 for e in exps):
                continue
            # bound = prod(|m|+t) - prod|m|, accumulated without cancellation
            val, bound = mpmath.mpf(1), mpmath.mpf(0)
            for e in exps:
                if e not in moments:
                    moments[e] = _one_dim_moment(config, e)
                    tails[e] = _grid_tail(config, e)
                bound = bound * (abs(moments[e]) + tails[e]) + abs(val) * tails[e]
                val *= moments[e]
            terms.append((exps, c, val))
            total += to_mp(c) * val
            tail += abs(to_mp(c)) * bound
        return PartitionValue(+total, config.K, cap, +tail, terms, "factorized Jackson sums")


def partition_nested(
    config: EnsembleConfig, couplings: Optional[Mapping[int, Rational]] = None, cap: int = 6, K_grid: Optional[int] = None
) -> PartitionValue:
    """Literal nested Jackson sum over ``(2 K_grid)^N`` grid points.

    The elliptic model replaces ``(u, z_i/z_j)_beta`` by the ratio
    ``Gamma(u, q^beta z_i/z_j; w) / Gamma(u, z_i/z_j; w)``.
    """
    K_grid = K_grid or config.K
    npts = (2 * K_grid) ** config.N
    if npts > MAX_NESTED_POINTS:
        raise SizeError(f"{npts} grid points exceed the nested-sum guard {MAX_NESTED_POINTS}")
    couplings = {k: as_fraction(v) for k, v in (couplings or {}).items()}
    N, beta = config.N, config.beta
    with mpmath.workdps(config.dps):
        grid = _grid(config)[:K_grid]
        pts = [(x, w) for x, w in grid] + [(-x, w) for x, w in grid]
        um, gm, rm = to_mp(config.u), to_mp(config.g), to_mp(config.r)
        cps = [(k, to_mp(v)) for k, v in sorted(couplings.items())]
        depth = config.product_K or 12

        def arg(z):
            return mpmath.fsum(v * z**k / k for k, v in cps)

        cache: Dict[Tuple[int, int], object] = {}

        def pair(ia, ib):
            key = (ia, ib)
            if key not in cache:
                x = pts[ia][0] / pts[ib][0]
                if config.elliptic:
                    cache[key] = _gamma_ratio(config, x, depth)
                else:
                    v = mpmath.mpf(1)
                    for l in range(beta):
                        v *= um - rm**l * gm * x
                    cache[key] = v
            return cache[key]

        total = mpmath.mpf(0)
        args = [arg(x) for x, _ in pts]
        for idx in cartesian(range(len(pts)), repeat=N):
            # the exponential is truncated in total coupling degree, as in
            # the factorized evaluation
            a = mpmath.fsum(args[i] for i in idx)
            val = mpmath.fsum(a**m / factorial(m) for m in range(cap + 1))
            for i in idx:
                x, w = pts[i]
                val *= w * x ** (beta * (N - 1))
            for a in range(N):
                for b in range(N):
                    if a != b:
                        val *= pair(idx[a], idx[b])
                        if val == 0:
                            break
            total += val
        note = "nested Jackson sum" + (" (elliptic gamma ratios, exploratory)" if config.elliptic else "")
        return PartitionValue(+total, K_grid, cap, mpmath.mpf("nan"), [], note)


def _gamma_ratio(config: EnsembleConfig, x, depth: int):
    """``Gamma(u, q^beta x; w) / Gamma(u, x; w)`` as four elliptic products."""
    spec, w = config.spec, config.w
    qm, wm = to_mp(spec.q), to_mp(w)
    qb = qm**config.beta

    def prod(arg):
        try:
            return elliptic_pochhammer(config.u, arg, w, spec, depth, config.g, config.dps).value
        except PoleError:
            return mpmath.mpf(0)

    num = prod(qm * wm / (qb * x)) * prod(x)
    den = prod(qb * x) * prod(qm * wm / x)
    if den == 0:
        raise PoleError(f"elliptic gamma ratio has a pole at z_i/z_j = {mpmath.nstr(x, 10)}")
    return num / den


__all__ = [
    "EnsembleConfig",
    "MomentValue",
    "moment_quadrature",
    "moment_closed",
    "moment_series",
    "NormalizationCertificate",
    "normalization_certificate",
    "interaction_polynomial",
    "coupling_exponential",
    "PartitionValue",
    "partition_eigenvalue",
    "partition_nested",
]
