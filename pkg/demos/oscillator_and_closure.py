"""Deformed numbers, the oscillator relations and Witt-type closure.

Run: python3 demos/oscillator_and_closure.py
"""
from rpqcalc import make_algebra
from rpqcalc.opcalc import PAPER_ZM, SHIFTED, family_closure, verify_oscillator

kinds = [("AC", None, "1/2"), ("BM", None, "1/2"), ("JS", "1/2", "1/3"), ("CJ", "1/2", "1/3"), ("Quesne", "1/2", "1/3")]

print("1. Deformed numbers [n] for n = 0..5")
for kind, p, q in kinds:
    s = make_algebra(kind, p, q)
    print(f"   {s.kind.value:24s}", ", ".join(str(s.number(n)) for n in range(6)))
print("   (Quesne's [1] is not 1; the workbench reports it rather than normalizing.)")

print("\n2. Oscillator relations checked exactly on z^-5 .. z^5")
for kind, p, q in kinds:
    s = make_algebra(kind, p, q)
    checks = verify_oscillator(s, range(-5, 6))
    print(f"   {s.kind.value:24s} {sum(c.exact_zero() for c in checks)}/{len(checks)} exact zero")

print("\n3. Closure of [L_m1, L_m2] under both degree conventions (JS, p=1/2, q=1/3)")
js = make_algebra("JS", "1/2", "1/3")
for conv in (PAPER_ZM, SHIFTED):
    rep = family_closure(js, "LL", 2, -1, conv, range(-4, 5))
    print(f"   convention {conv:8s} verdict {rep.verdict:16s} degreewise closure {rep.degreewise_ok}")
print("   The z^m convention cannot close by grade; the z^(m+1) convention does.")
