import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from nfc.parser import ParseError, parse_expression, parse_input, evaluate, formula
from nfc.poly import Poly, SymbolTable


def test_quadratic_eulerian_scalar():
    spec = parse_input("f = a5*x1^2 + a9*y1^2;")
    assert spec.coefficient_names() == ["a5", "a9"]
    T = SymbolTable(["x1", "y1", "a5", "a9"])
    f = evaluate(spec.f, T)
    assert f == Poly.var(T, "a5") * Poly.var(T, "x1") ** 2 + Poly.var(T, "a9") * Poly.var(T, "y1") ** 2


def test_parameters_are_declared():
    spec = parse_input("mode parametric; parameters mu1; f = mu1*(x1^2+y1^2);")
    assert spec.mode == "parametric" and spec.parameters == ("mu1",)
    assert spec.coefficient_names() == []


def test_statements():
    spec = parse_input("""
        # comment
        frequencies 1, 3/2;
        degree 4; mu_degree 2;
        subst a1 = -2/3;
        b[1,0] = a1; a1[0,2] = 5;
    """)
    assert spec.frequencies == (mpq(1), mpq(3, 2))
    assert (spec.N, spec.M) == (4, 2)
    assert spec.subst == {"a1": mpq(-2, 3)}
    assert set(spec.table) == {("E", 1, 0), ("T1", 0, 2)}


@pytest.mark.parametrize("text, msg, pos", [
    ("f = x1^(-1);", "negative exponent", (1, 8)),
    ("f = x1^2.5;", None, None),
    ("f = x1 +;", None, (1, 9)),
    ("f = (x1;", None, None),
    ("g = x1;", "unknown statement", (1, 1)),
    ("symbols a; f = a*b;", "unknown symbol", (1, 18)),
    ("f = I*x1;", "reserved", None),
    ("b[1,0] = x1;", "cannot appear", None),
    ("f = x1;\nf = y1;", "twice", (2, 1)),
    ("f = x1^1000;", None, None),
])
def test_positioned_errors(text, msg, pos):
    with pytest.raises(ParseError) as e:
        parse_input(text)
    if msg:
        assert msg in str(e.value)
    if pos:
        assert (e.value.line, e.value.col) == pos
    assert str(e.value).startswith(f"line {e.value.line}, column {e.value.col}: ")


def test_invalid_utf8_is_positioned():
    with pytest.raises(ParseError) as e:
        parse_input(b"f = x1;\nf\xff")
    assert (e.value.line, e.value.col) == (2, 2)


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(ParseError):
        parse_input("f = " + "(" * 5000 + "x1" + ")" * 5000 + ";")


def test_formula_allows_division():
    T = SymbolTable(["a5", "a9"])
    r = formula("(a5 + a9)/2", T)
    assert r.num == (Poly.var(T, "a5") + Poly.var(T, "a9")).scale(mpq(1, 2))
    with pytest.raises(ParseError):
        formula("1/(a5 - a5)", T)
    with pytest.raises(ParseError):
        parse_expression("a5/2")


ALPHABET = st.sampled_from(list("xya1250+-*/^()[],;= \n#") + ["f", "b", "mu", "degree", "mode", "x1", "y2", "\xff", "é"])


@settings(max_examples=400, deadline=None)
@given(st.binary(max_size=60))
def test_grammar_totality_bytes(data):
    try:
        parse_input(data)
    except ParseError as e:
        assert e.line >= 1 and e.col >= 1


@settings(max_examples=400, deadline=None)
@given(st.lists(ALPHABET, max_size=30).map("".join))
def test_grammar_totality_tokens(text):
    try:
        parse_input(text)
    except ParseError as e:
        assert e.line >= 1 and e.col >= 1
