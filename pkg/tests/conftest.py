import pytest
from gmpy2 import mpq

from nfc.poly import Poly, SymbolTable


@pytest.fixture
def xyz():
    return SymbolTable(["x", "y", "z"])


def rat(p, q=1):
    return mpq(p, q)


def poly_from_dict(table, d):
    """{exponent tuple: rational} -> Poly"""
    out = Poly.zero(table)
    for exps, c in d.items():
        out = out + Poly.monomial(table, exps, c)
    return out


CRITERIA = []


def record(number, ok, text):
    """One pass/fail line per acceptance criterion (or criterion part)."""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
    CRITERIA.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
