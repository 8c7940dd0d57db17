import pytest
from gmpy2 import mpq

from nfc.classification import PivotError, UnresolvedBeyond, classify_rows, gate_expression
from nfc.engine import lvec_to_field
from nfc.lie import E, T1, T2, LVec, v0
from nfc.orbital import orbital_infinite, orbital_s_plus_1
from nfc.parametric import parametric_infinite, parametric_r_plus_1, parametric_s_plus_1
from nfc.poly import SymbolTable
from nfc.ratfn import RatFn
from nfc.state import infinite_level, level_r_plus_1, level_s_plus_1
from nfc.suites import OMEGA, random_first_level, random_parametric

T = SymbolTable([])


def field(**coeffs):
    """field(E10=1, T1_02=3) style constructor over numbers"""
    terms = {}
    for name, c in coeffs.items():
        kind, mn = name.split("_") if "_" in name else (name[0], name[1:])
        ctor = {"E": E, "T1": T1, "T2": T2}[kind]
        terms[ctor(int(mn[0]), int(mn[1]))] = RatFn.const(T, c)
    return v0(T, *OMEGA) + LVec(T, terms)


def test_classification_of_generic_s1_r2():
    v = field(E10=1, E01=2, E11=3, E20=1, E02=1, E21=1, E12=1)
    res = level_s_plus_1(v, N=3)
    cl = res.classification
    assert (cl.s.value, cl.p.value, cl.r.value, cl.q.value) == (1, 0, 2, 0)
    assert cl.alpha == 4 and cl.genericGate


def test_pivot_vanishing_raises():
    v = field(E01=2, E20=1)
    with pytest.raises(PivotError):
        level_s_plus_1(v, s=1, p=0, N=2)


def test_unresolved_r_is_reported():
    v = field(E10=1, E01=1)
    res = infinite_level(v, 3)
    assert res.caseTag == "r-unresolved"
    assert isinstance(res.classification.r, UnresolvedBeyond)
    assert any("r unresolved up to degree 3" in c for c in res.caveats)


def test_linear_case():
    res = infinite_level(v0(T, *OMEGA), 3)
    assert res.caseTag == "linear"
    assert {b for b, mu in res.support()} == {T1(0, 0), T2(0, 0)}


def test_parametric_linearizable_verdict():
    w = random_parametric(2, 1, 0)
    F, t = lvec_to_field(w.field, w.muNames)
    # keep parameter-dependent terms, drop the mu-free nonlinearity and the Theta^2 tail
    keep = {k: c for k, c in F.items() if any(k[1]) or (k[0].m + k[0].n == 0)}
    from nfc.engine import field_to_lvec
    from nfc.parametric import ParamLVec
    full = t.extend(["mu1"], {"mu1": "parameter"})
    res = parametric_infinite(ParamLVec(field_to_lvec(keep, full, ("mu1",)), ("mu1",), 1), 2)
    assert res.caseTag in ("linearizable", "theta2-row")
    if res.caseTag == "linearizable":
        assert "zero-parameter part linearizable up to degree 2" in res.caveats


@pytest.mark.parametrize("seed", range(3))
def test_state_levels_only_shrink_support(seed):
    v = random_first_level(4, seed)
    s1 = level_s_plus_1(v)
    r1 = level_r_plus_1(s1)
    inf = infinite_level(v)
    assert len(inf.support()) <= len(r1.support()) <= len(s1.support())


@pytest.mark.parametrize("seed", range(3))
def test_results_are_deterministic(seed):
    v = random_first_level(4, seed)
    a, b = orbital_infinite(v), orbital_infinite(v)
    assert a.terms == b.terms
    assert [s.generator for s in a.steps] == [s.generator for s in b.steps]


@pytest.mark.parametrize("seed", range(3))
def test_parametric_pivots_are_frozen(seed):
    w = random_parametric(4, 2, seed, {("E", 1, 0)} if seed == 2 else ())
    res = parametric_s_plus_1(w)
    s, p = res.classification.s.value, res.classification.p.value
    pivot = E(s - p, p)
    assert not [k for k in res.terms if k[0] == pivot and any(k[1])]
    res2 = parametric_r_plus_1(res)
    r, q = res2.classification.r.value, res2.classification.q.value
    assert not [k for k in res2.terms if k[0] in (pivot, E(r - q, q)) and any(k[1])]


def test_orbital_removes_more_than_state():
    v = random_first_level(4, 0)
    assert len(orbital_s_plus_1(v).support()) <= len(level_s_plus_1(v).support())


def test_gate_expression():
    t = SymbolTable(["b10", "b01", "b11", "b20", "b02"])
    b = [RatFn.var(t, n) for n in t.names]
    g = gate_expression(*b)
    assert g.subs({"b10": 0}) == (RatFn.var(t, "b01") ** 2 * RatFn.var(t, "b20")).subs({"b10": 0})


def test_classify_rows_u_table():
    v = field(E10=1, E01=2, E11=3, E20=1, E02=1, E21=1, E12=1)
    cl = classify_rows(level_s_plus_1(v, N=3).mu_free(), 3)
    assert cl.uTable == {0: 1, 1: 1}
    assert mpq(cl.alpha) == 4
