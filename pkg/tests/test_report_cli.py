import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from nfc.cli import main
from nfc.driver import InputError, run
from nfc.parser import parse_input
from nfc.report import emit, format_coeff, report_from_json
from nfc.poly import SymbolTable
from nfc.parser import formula

QUAD = "f = a5*x1^2 + a9*y1^2 + a12*x2^2 + a14*y2^2;"


def report(text, command="normalize", **kw):
    return run(parse_input(text), command, **kw)


@pytest.mark.parametrize("fmt, needle", [("text", "b_{1,0} = (a5 + a9)/2"),
                                         ("json", '"text": "(a5 + a9)/2"'),
                                         ("latex", "b_{1,0} &= \\frac{a_{5} + a_{9}}{2}")])
def test_lowest_coefficient_in_every_format(fmt, needle):
    assert needle in emit(report(QUAD, "first-level"), fmt).decode()


def test_empty_input_is_v0():
    r = report("")
    assert r.verdict == "v0; infinite level"
    assert "verdict: v0; infinite level" in emit(r).decode()


SAMPLES = [
    ("", "normalize", {}),
    (QUAD, "first-level", {}),
    ("f = x1^2 + 2*x2^2 + x1*x2^2 + y1^3;", "normalize", {"N": 4}),
    ("mode orbital; f = x1^2 + 2*x2^2 + x1^2*x2^2;", "normalize", {"N": 4}),
    ("b[1,0]=1; b[0,1]=2; b[1,1]=3; b[2,0]=1; b[0,2]=1; b[2,1]=1; a1[0,2]=1/3;", "classify", {"N": 4}),
    ("mode parametric; parameters mu1; f = mu1*(x1^2+y1^2) + x1^2 + x2^2;", "normalize", {}),
    ("frequencies 1, 3/2; f = c*x1^2 + x2^2;", "normalize", {"subst": {"c": 2}}),
]


@pytest.mark.parametrize("text, command, kw", SAMPLES)
def test_json_round_trip_and_determinism(text, command, kw):
    r = report(text, command, **kw)
    for fmt in ("text", "json", "latex"):
        assert emit(r, fmt) == emit(r, fmt)
    j = emit(r, "json")
    back = report_from_json(j)
    assert back == r
    assert emit(back, "json") == j
    d = json.loads(j)
    assert d["version"] == "nfc-1"
    for t in d["terms"]:
        assert set(t["coeff"]) == {"num", "den"}
        for m in t["coeff"]["num"]:
            assert set(m) == {"exps", "re", "im"}


TAB = SymbolTable(["a", "b", "c"])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 6), st.sampled_from(["a", "b", "a*b", "c^2", "1"])),
                min_size=1, max_size=4),
       st.sampled_from(["1", "2", "b", "3*a*c", "a + 1"]))
def test_readable_coefficient_reparses(terms, den):
    text = "(" + " + ".join(f"({p}/{q})*{m}" for p, q, m in terms) + f")/({den})"
    r = formula(text, TAB)
    assert formula(format_coeff(r), TAB) == r


def test_input_errors():
    with pytest.raises(InputError, match="g1 must be zero"):
        report("g1 = x1^2;")
    report("g1 = 0; f = x1^2;")
    with pytest.raises(InputError, match="primary shift"):
        report("mode parametric; parameters mu1; f = 1 + x1^2;")
    with pytest.raises(InputError, match="use mode parametric"):
        report("parameters mu1; f = mu1*x1^2;")
    with pytest.raises(InputError, match="unknown symbol"):
        report("f = x1^2;", subst={"zz": 1})


def run_cli(args, stdin=b""):
    p = subprocess.run([sys.executable, "-m", "nfc.cli", *args], input=stdin, capture_output=True)
    return p.returncode, p.stdout.decode(), p.stderr.decode()


def test_cli_exit_codes(tmp_path):
    code, out, _ = run_cli(["normalize"], b"")
    assert code == 0 and "v0; infinite level" in out
    code, _, err = run_cli(["normalize"], b"f = x1^(-1);")
    assert code == 1 and "line 1, column 8" in err
    code, _, err = run_cli(["normalize", "--mode", "state", "--degree", "2"],
                           b"b[0,1] = 1; b[2,0] = 1;")
    assert code == 0
    src = tmp_path / "in.txt"
    src.write_text(QUAD)
    out_file = tmp_path / "r.json"
    code, _, _ = run_cli(["first-level", str(src), "--format", "json", "--out", str(out_file)])
    assert code == 0
    assert report_from_json(out_file.read_text()).terms


def test_cli_pivot_error_exit_code(monkeypatch, capsys):
    from nfc.classification import PivotError

    def boom(*a, **k):
        raise PivotError("pivot coefficient b_{1,0} vanishes")
    monkeypatch.setattr("nfc.cli.run", boom)
    monkeypatch.setattr("sys.stdin", type("S", (), {"buffer": type("B", (), {"read": lambda self: b""})()})())
    assert main(["normalize"]) == 2
    assert "vanishes" in capsys.readouterr().err


def test_cli_verify_failure_exit_code(monkeypatch, capsys):
    from nfc.suites import SuiteResult
    monkeypatch.setattr("nfc.cli.verify", lambda name: SuiteResult(name, False, ["b_{2,1}: differs"]))
    assert main(["verify", "appendix"]) == 3
    assert "appendix: FAIL" in capsys.readouterr().out


def test_cli_verify_pass(capsys):
    assert main(["verify", "example35"]) == 0
    assert "example35: pass" in capsys.readouterr().out
