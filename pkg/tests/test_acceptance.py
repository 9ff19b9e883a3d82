"""Acceptance gate: one check per criterion, at the stated tolerances.

Each ``criterion_*`` returns ``(ok, detail)``.  The pytest wrappers assert
``ok``; criteria that are honestly red are strict xfails, so an unexpected
pass fails the suite.  A PASS/FAIL line per criterion is printed in the
terminal summary (and when the file is run as a script).
"""

from __future__ import annotations

import contextlib
import io
import itertools
import random
import time
from fractions import Fraction

import mpmath
import pytest

from rpqcalc import make_algebra
from rpqcalc.cli import main as cli_main
from rpqcalc.combinat import bell_complete, bell_from_exponential, bell_scaled_identity, dN_substitution, newton_product
from rpqcalc.laurent import LaurentPoly
from rpqcalc.matmodel import EnsembleConfig, moment_quadrature, normalization_certificate
from rpqcalc.nalgebra import check_crto, closed_form_check
from rpqcalc.opcalc import PAPER_ZM, SHIFTED, central_terms, family_closure, q_case_display, verify_oscillator
from rpqcalc.qspecial import elliptic_gamma, jackson_integral, pochhammer, pochhammer_ratio_check, to_mp

RESULTS: dict[int, tuple[bool, str, float]] = {}

BUILTIN = [
    ("ArikCoon", None, "1/2"),
    ("BiedenharnMacfarlane", None, "1/2"),
    ("JagannathanSrinivasa", "1/2", "1/3"),
    ("ChakrabartiJagannathan", "1/2", "1/3"),
    ("Quesne", "1/2", "1/3"),
]


def _specs():
    return [make_algebra(k, p, q) for k, p, q in BUILTIN]


def criterion_1():
    bad = []
    for s in _specs():
        for chk in verify_oscillator(s, range(-5, 6)):
            if not chk.exact_zero():
                bad.append(f"{s.kind.value}:{chk.name}")
    return not bad, f"5 algebras x 4 relations on [-5,5]; failing: {bad or 'none'}"


def criterion_2():
    fails = {"crto": 0, "crto2": 0}
    corrected_fails = 0
    total = 0
    for s in _specs():
        for a in (1, 2, 3):
            for n, m in itertools.product(range(-3, 4), repeat=2):
                rep = check_crto(s, a, a, n, m, range(-4, 5))
                total += 1
                fails["crto"] += not rep.passed("crto")
                fails["crto2"] += not rep.passed("crto2_displayed")
                corrected_fails += not rep.passed("crto2_corrected")
    ok = not fails["crto"] and not fails["crto2"]
    return ok, (
        f"{total} (algebra, a, n, m) cases: [T,T] failures {fails['crto']}, [T,I] displayed failures "
        f"{fails['crto2']}; sign-corrected [T,I] failures {corrected_fails}"
    )


def criterion_3():
    js = make_algebra("JS", "1/2", "1/3")
    exact = certified = bad = 0
    for mode in ("pure_T", "mixed_I"):
        for a in (1, 2):
            for ms in itertools.product(range(-2, 3), repeat=3):
                rep = closed_form_check(js, a, list(ms), range(-3, 4), mode)
                if rep.closed_form_ok:
                    exact += 1
                elif rep.residual and rep.solved_closes:
                    certified += 1
                else:
                    bad += 1
    return not bad, f"{exact} exact, {certified} residual-certified with exact solved closure, {bad} failing"


def criterion_4():
    B, E = bell_complete(12), bell_from_exponential(12)
    rec = all(B[l] == E[l] for l in range(13))
    scaled = {q: bell_scaled_identity(10, q)["polynomial_identity"] for q in (Fraction(1, 2), Fraction(2, 3))}
    return rec and all(scaled.values()), f"recurrence=exponential l<=12: {rec}; scaled identity l<=10: {scaled}"


def criterion_5():
    rng = random.Random(20240605)

    def vec(N):
        return [Fraction(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(N)]

    bad = 0
    for N in range(1, 7):
        for _ in range(200):
            a, b = newton_product(vec(N))
            bad += a != b
    for N in range(1, 6):
        for _ in range(200):
            a, b = dN_substitution(vec(N))
            bad += a != b
    return bad == 0, f"1200 Newton + 1000 D_N random vectors, mismatches: {bad}"


def _draws(n=20, seed=7):
    rng = random.Random(seed)
    for _ in range(n):
        p = Fraction(rng.randint(50, 99), 100)
        r = Fraction(rng.randint(10, 90), 100)
        yield {
            "spec": make_algebra("JS", p, p * r),
            "u": Fraction(rng.choice((-1, 1)) * rng.randint(100, 300), 100),
            "z": Fraction(rng.choice((-1, 1)) * rng.randint(1, 100), 100),
            "w": Fraction(rng.randint(10, 90), 100),
            "n": rng.randint(1, 4),
        }


def _slack(v, dps=30):
    return abs(v) * mpmath.mpf(10) ** -(dps - 5)


def criterion_6():
    worst_ratio = worst_recomp = mpmath.mpf(0)
    unstable = []
    with mpmath.workdps(40):
        for i, d in enumerate(_draws()):
            s, u, z, w = d["spec"], d["u"], d["z"], d["w"]
            chk = pochhammer_ratio_check(u, z, s, d["n"], K=200)
            worst_ratio = max(worst_ratio, chk["rel_error"])
            g = elliptic_gamma(u, z, w, s, K=200)
            worst_recomp = max(worst_recomp, g.recomposition_error())
            v1, v2 = pochhammer(u, z, s, "inf", K=200), pochhammer(u, z, s, "inf", K=400)
            if abs(v2.value - v1.value) > v1.tail_bound + _slack(v1.value):
                unstable.append(("pochhammer", i))
            if i < 5:  # the K = 400 double product is the expensive part
                g2 = elliptic_gamma(u, z, w, s, K=400)
                if abs(g2.value - g.value) > g.tail_bound + _slack(g.value):
                    unstable.append(("gamma", i))
        ok = worst_ratio <= 1e-10 and worst_recomp <= 1e-10 and not unstable
        return ok, (
            f"20 draws, |q/p|,|w| <= 0.9: worst ratio-identity rel error {mpmath.nstr(worst_ratio, 3)}, "
            f"worst recomposition {mpmath.nstr(worst_recomp, 3)}; K->2K beyond tail bound: {unstable or 'none'}"
        )


def criterion_7():
    js = make_algebra("JS", "1/2", "1/3")
    odd_ok = all(jackson_integral(LaurentPoly.monomial(n), 1, js).value == 0 for n in (1, 3, 5, 7))
    worst = mpmath.mpf(0)
    with mpmath.workdps(40):
        for n in range(9):
            v = jackson_integral(LaurentPoly.monomial(n), 1, js, K=300, one_sided=True)
            want = 1 / to_mp(js.number(n + 1))
            worst = max(worst, abs(v.value - want))
    return odd_ok and worst <= 1e-12, f"odd integrands exact 0: {odd_ok}; worst |sum - xi^(n+1)/[n+1]| n<=8: {mpmath.nstr(worst, 3)}"


def criterion_8():
    rng = random.Random(8)
    configs = []
    for _ in range(5):
        p = Fraction(rng.randint(50, 95), 100)
        q = p * Fraction(rng.randint(20, 80), 100)
        u = Fraction(rng.randint(110, 300), 100)
        configs.append(EnsembleConfig(make_algebra("JS", p, q), u=u))
    zero_ok = all(moment_quadrature(c, 0).value == 1 for c in configs)
    cert = normalization_certificate(configs, (2, 4, 6), tol=1e-8)
    again = normalization_certificate(configs, (2, 4, 6), tol=1e-8)
    deterministic = cert.to_json() == again.to_json()
    ok = zero_ok and deterministic and cert.outcome in ("agree", "constant-factor")
    ratios = {k: [r["ratio"][:7] for r in cert.rows if r["k"] == k] for k in (2, 6)}
    return ok, f"<z^0>=1: {zero_ok}; outcome {cert.outcome!r} (deterministic: {deterministic}); quadrature/closed ratios {ratios}"


def criterion_9():
    problems = []
    for s in _specs():
        for m in (-1, 0, 1):
            if central_terms(s, m).C_L != 0:
                problems.append(f"C_L {s.kind.value} m={m}")
        z = central_terms(s, 0)
        if z.C_LI or z.C_I:
            problems.append(f"C_LI/C_I {s.kind.value}")
    for q in (Fraction(1, 2), Fraction(2, 3)):
        ac = make_algebra("AC", None, q)
        for m in range(-4, 5):
            ours = central_terms(ac, m, C_L=Fraction(1, 2))
            disp = q_case_display(q, m)
            if (ours.C_L, ours.C_LI, ours.C_I) != (disp.C_L, disp.C_LI, disp.C_I):
                problems.append(f"q-case q={q} m={m}")
    return not problems, f"vanishing and q-case substitution (C_L knob 1/2): {problems or 'all exact'}"


def criterion_10():
    js = make_algebra("JS", "1/2", "1/3")
    displayed = [family_closure(js, "LL", m1, m2, PAPER_ZM, range(-4, 5)).verdict for m1, m2 in [(1, 0), (2, -1), (3, 1)]]
    shifted = [family_closure(js, "LL", m1, m2, SHIFTED, range(-4, 5)) for m1, m2 in [(1, 0), (2, -1), (3, 1)]]
    ok = all(v == "structural-fail" for v in displayed) and all(r.degreewise_ok for r in shifted)
    return ok, f"paper_zm verdicts {displayed}; shifted degreewise closure {[r.degreewise_ok for r in shifted]}"


CLI_RUNS = [
    ["numbers", "--kind", "AC", "--q", "1/2", "--n", "0..5"],
    ["numbers", "--kind", "AC", "--q", "1/2", "--out", "csv"],
    ["verify-oscillator", "--degrees=-5..5"],
    ["bracket", "--left", "L:1", "--right", "I:2"],
    ["closure", "--family", "L", "--convention", "paper_zm"],
    ["central", "--kind", "AC", "--q", "1/2"],
    ["jacobi"],
    ["n-bracket", "--m", "1,0,-1", "--mode", "mixed_I"],
    ["bell", "--L", "6", "--scaled-q", "2/3"],
    ["newton", "--N", "4", "--mode", "dN"],
    ["special", "pochhammer", "--order", "3"],
    ["special", "theta", "--w", "1/3"],
    ["special", "gamma", "--w", "1/3", "--K", "60"],
    ["special", "density", "--z", "1/2"],
    ["special", "integral", "--f", "z^2 + z^3"],
    ["moments", "--k", "0..4", "--K", "150"],
    ["moments", "--k", "0..4", "--K", "150", "--out", "csv"],
    ["partition", "--N", "2", "--K", "40", "--cap", "2", "--couplings", "2:1/4"],
    ["constraint", "--n", "1", "--m", "-1"],
    ["constraint", "--expanded", "--K", "5", "--cap", "2"],
    ["toy", "--K", "4"],
    ["toy", "--scan", "--K", "3", "--cap", "2"],
]


def _run_cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv + ["--seed", "13"])
    return code, buf.getvalue()


def criterion_11():
    differing = []
    for argv in CLI_RUNS:
        a, b = _run_cli(argv), _run_cli(argv)
        if a != b or not a[1]:
            differing.append(argv[0])
    verbs = {argv[0] for argv in CLI_RUNS}
    return not differing, f"{len(CLI_RUNS)} invocations over {len(verbs)} verbs run twice; differing: {differing or 'none'}"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 12)}
HONEST_RED = {
    2: "displayed [T,I] closed form has the wrong relative sign on its I^(b) term",
    8: "displayed moment closed form matches quadrature neither exactly nor up to one constant",
}


def evaluate(i):
    if i not in RESULTS:
        t = time.perf_counter()
        ok, detail = CRITERIA[i]()
        RESULTS[i] = (ok, detail, time.perf_counter() - t)
    return RESULTS[i]


def _case(i):
    marks = [pytest.mark.xfail(strict=True, reason=HONEST_RED[i])] if i in HONEST_RED else []
    return pytest.param(i, marks=marks, id=f"criterion_{i:02d}")


@pytest.mark.parametrize("i", [_case(i) for i in CRITERIA])
def test_criterion(i):
    ok, detail, _ = evaluate(i)
    print(f"criterion {i}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def summary_lines():
    out = []
    for i in sorted(RESULTS):
        ok, detail, secs = RESULTS[i]
        note = f" [known red: {HONEST_RED[i]}]" if (not ok and i in HONEST_RED) else ""
        out.append(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {detail}{note}")
    return out


if __name__ == "__main__":
    for i in CRITERIA:
        evaluate(i)
    print("\n".join(summary_lines()))
