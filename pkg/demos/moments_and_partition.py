"""Gaussian-density moments, the displayed closed form, the eigenvalue
partition function and the matrix-model constraint operators.

Run: python3 demos/moments_and_partition.py
"""
from fractions import Fraction

import mpmath

from rpqcalc import make_algebra
from rpqcalc.matmodel import (
    EnsembleConfig,
    check_matrix_commutator,
    moment_closed,
    moment_quadrature,
    moment_series,
    normalization_certificate,
    partition_eigenvalue,
)

mpmath.mp.dps = 30
cfg = EnsembleConfig(make_algebra("JS", "3/4", "1/2"), u=Fraction(3, 2))

print("1. Moments <z^k>: quadrature, series form and the displayed closed form")
for k in range(0, 7, 2):
    qv = moment_quadrature(cfg, k).value
    sv = moment_series(cfg, k).value
    cv = moment_closed(cfg, k).value
    print(f"   k={k}  quad {mpmath.nstr(qv, 12):16s} series {mpmath.nstr(sv, 12):16s} "
          f"closed {mpmath.nstr(cv, 12):16s} ratio {mpmath.nstr(qv / cv, 8)}")
cert = normalization_certificate([cfg], (2, 4, 6))
print("   certificate outcome:", cert.outcome, "(the ratio is not constant in k)")

print("\n2. Eigenvalue partition function, N=1, couplings t_2 = 1/4")
z = partition_eigenvalue(cfg, {2: Fraction(1, 4)}, cap=4)
print("  ", z.to_json())

print("\n3. Matrix constraint operators T_n: deformed commutator on N=2 monomials")
for variant in ("displayed", "shifted"):
    rep = check_matrix_commutator(cfg.spec, 1, -1, N=2, degrees=range(-2, 3), variant=variant)
    print(f"   {variant:9s} residual monomials {len(rep.residuals)}/{rep.probes}, "
          f"solved closes {rep.solved_closes}, verdict {rep.verdict}")
