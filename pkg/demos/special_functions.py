"""Deformed Pochhammer symbols, theta, elliptic gamma and the Jackson integral.

Run: python3 demos/special_functions.py
"""
import mpmath

from rpqcalc import make_algebra
from rpqcalc.laurent import LaurentPoly
from rpqcalc.qspecial import (
    elliptic_gamma,
    jackson_integral,
    pochhammer,
    pochhammer_ratio_check,
    theta,
    to_mp,
)

mpmath.mp.dps = 40
js = make_algebra("JS", "1/2", "1/3")
u, z = 2, "1/5"

print("1. Finite and infinite Pochhammer symbols (u=2, z=1/5)")
print("   order 3, exact:", pochhammer(u, z, js, 3).exact)
inf = pochhammer(u, z, js, "inf", K=200)
print("   order inf     :", mpmath.nstr(inf.value, 20), " tail bound", mpmath.nstr(inf.tail_bound, 3),
      " stripped u power", inf.u_power)
chk = pochhammer_ratio_check(u, z, js, 3, K=200)
print("   ratio identity relative error:", mpmath.nstr(chk["rel_error"], 3))

print("\n2. Theta and elliptic gamma (w=1/3)")
print("   theta:", mpmath.nstr(theta(u, z, "1/3", K=100).value, 20))
g = elliptic_gamma(u, z, "1/3", js, K=100)
print("   gamma:", mpmath.nstr(g.value, 20), " recomposition error", mpmath.nstr(g.recomposition_error(), 3))

print("\n3. Jackson integral of z^n over the geometric grid, xi = 1")
for n in range(5):
    v = jackson_integral(LaurentPoly.monomial(n), 1, js, K=300, one_sided=True)
    print(f"   n={n}  sum {mpmath.nstr(v.value, 15):18s} 1/[n+1] {mpmath.nstr(1 / to_mp(js.number(n + 1)), 15)}")
odd = jackson_integral(LaurentPoly.monomial(3), 1, js)
print("   symmetric grid, odd integrand z^3:", odd.value)
