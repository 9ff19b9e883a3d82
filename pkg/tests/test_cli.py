import json
import subprocess
import sys

import pytest

from rpqcalc.cli import VERBS, build_parser, int_range, main


@pytest.fixture
def alg(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr()


def test_verify_oscillator_44_records(capsys, alg):
    js = alg("js.alg", "kind = JagannathanSrinivasa\np = 1/2\nq = 1/3\n")
    code, out = run(capsys, ["verify-oscillator", "--algebra-file", js, "--degrees", "-5..5"])
    rep = json.loads(out.out)
    assert code == 0
    assert rep["summary"]["records"] == 44
    assert rep["summary"]["verdicts"]["exact-pass"] == 44


def test_numbers_csv(capsys, alg):
    ac = alg("ac.alg", "kind = ArikCoon\nq = 1/2\n")
    code, out = run(capsys, ["numbers", "--algebra-file", ac, "--n", "0..5", "--out", "csv"])
    assert code == 0
    assert "3, 7/4" in out.out.splitlines()


def test_closure_structural_fail_exits_zero(capsys):
    code, out = run(capsys, ["closure", "--family", "L", "--convention", "paper_zm"])
    rep = json.loads(out.out)
    assert code == 0
    assert [r["verdict"] for r in rep["records"]] == ["structural-fail"]


def test_precision_float(capsys):
    code, out = run(capsys, ["numbers", "--kind", "AC", "--q", "1/2", "--precision", "float:6"])
    assert code == 0
    vals = [r["actual"] for r in json.loads(out.out)["records"]]
    assert vals[3] == "1.75"


def test_domain_error_exit_3(capsys):
    code, out = run(capsys, ["numbers", "--kind", "JS", "--p", "1/3", "--q", "1/2"])
    assert code == 3
    assert "q=1/2" in out.err and "p=1/3" in out.err


def test_divergence_exit_3(capsys):
    code, out = run(capsys, ["special", "integral", "--f", "z^-2"])
    assert code == 3 and "z^-2" in out.err


def test_usage_errors_exit_2(capsys):
    for argv in (["frobnicate"], ["numbers", "--n", "5..1"], ["numbers", "--precision", "double"], ["closure", "--family", "X"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_fail_exit_1(capsys, monkeypatch):
    import rpqcalc.cli as cli

    def broken(args, rep):
        rep.add("forced", verdict="fail")

    monkeypatch.setitem(cli.VERBS, "numbers", (broken, "x"))
    code, _ = run(capsys, ["numbers"])
    assert code == 1


def test_timing_is_opt_in(capsys):
    _, out = run(capsys, ["numbers"])
    assert "timing_seconds" not in json.loads(out.out)
    _, out = run(capsys, ["numbers", "--timing"])
    assert "timing_seconds" in json.loads(out.out)


def test_help_lists_every_verb():
    text = build_parser().format_help()
    for verb in VERBS:
        assert verb in text


def test_int_range():
    assert int_range("-2..1") == [-2, -1, 0, 1]
    assert int_range("3,1,2") == [3, 1, 2]


def test_moments_csv_and_discrepancy(capsys):
    code, out = run(capsys, ["moments", "--K", "150", "--k", "0..4"])
    rep = json.loads(out.out)
    assert code == 0
    verdicts = {r["name"]: r["verdict"] for r in rep["records"]}
    assert verdicts["<z^0> = 1"] == "exact-pass"
    assert verdicts["closed form vs quadrature"] == "logged-discrepancy"
    code, out = run(capsys, ["moments", "--K", "150", "--k", "0..4", "--out", "csv"])
    assert out.out.splitlines()[0] == "k, quadrature, closed, ratio"


def test_console_script_subprocess_deterministic():
    argv = [sys.executable, "-m", "rpqcalc.cli", "newton", "--N", "3", "--seed", "5"]
    a = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["exit_code"] == 0
