"""Graded shift operators T^(a), I^(a) and their commutator closed forms.

Run: python3 demos/nalgebra_brackets.py
"""
from rpqcalc import make_algebra
from rpqcalc.nalgebra import check_crto, closed_form_check

js = make_algebra("JS", "1/2", "1/3")

print("1. [T^(a)_n, T^(a)_m] and [T^(a)_n, I^(a)_m] on z^-4 .. z^4 (a=2, n=1, m=-2)")
rep = check_crto(js, 2, 2, 1, -2, range(-4, 5))
for name, ok in rep.to_json()["passed"].items():
    print(f"   {name:20s} {'closes' if ok else 'residual'}")
print("   The displayed [T,I] form fails; flipping the sign of its I^(b) term closes it.")

print("\n2. Three-operator Levi-Civita brackets against the displayed M/W closed forms")
for mode in ("pure_T", "mixed_I"):
    for ms in ([1, 0, -1], [2, 1, 1]):
        r = closed_form_check(js, 1, ms, range(-3, 4), mode)
        print(f"   {mode:8s} m={ms!s:12s} closed form exact: {r.closed_form_ok!s:5s} "
              f"solved closure: {r.solved_closes!s:5s} verdict: {r.verdict}")

print("\n3. The n=2 case: the general display does not reduce to the two-operator bracket")
r = closed_form_check(js, 1, [2, -1], range(-3, 4), "pure_T")
print(f"   m=[2,-1] closed form exact: {r.closed_form_ok}; degreewise solved closure: {r.solved_closes}")
