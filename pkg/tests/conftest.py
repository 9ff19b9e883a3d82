from fractions import Fraction

import pytest

from rpqcalc import make_algebra

BUILTIN = {
    "ArikCoon": (None, "1/2"),
    "BiedenharnMacfarlane": (None, "1/2"),
    "JagannathanSrinivasa": ("1/2", "1/3"),
    "ChakrabartiJagannathan": ("1/2", "1/3"),
    "Quesne": ("1/2", "1/3"),
}


@pytest.fixture
def js():
    return make_algebra("JS", "1/2", "1/3")


@pytest.fixture
def ac():
    return make_algebra("AC", None, "1/2")


@pytest.fixture(params=sorted(BUILTIN))
def builtin(request):
    p, q = BUILTIN[request.param]
    return make_algebra(request.param, p, q)


def F(x):
    return Fraction(x)


@pytest.fixture(autouse=True)
def _mp_precision():
    # compare library values (computed at 30 digits) without rounding to mpmath's default 15
    import mpmath

    with mpmath.workdps(40):
        yield


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
