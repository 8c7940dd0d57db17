"""Acceptance criteria 1-10.  Each check prints one pass/fail line.

Where a quoted closed form or display is known to be off, the literal check
is kept (and fails) next to a corrected companion check.
"""

import time

import pytest

from conftest import record
from nfc import closed_forms
from nfc.engine import lvec_to_field
from nfc.families import compare_support
from nfc.lie import LVec, E, v0
from nfc.oracles import first_level_replay, replay
from nfc.orbital import orbital_infinite, orbital_r_plus_1, orbital_s_plus_1
from nfc.first_level import first_level
from nfc.parametric import parametric_infinite, parametric_s_plus_1, second_level_coefficient
from nfc.parser import formula
from nfc.poly import SymbolTable
from nfc.ratfn import RatFn
from nfc.state import infinite_level, level_r_plus_1, level_s_plus_1
from nfc.suites import (OMEGA, conjugacy_instances, level_chain, nonresonant, quadratic_first_level,
                        random_first_level, random_parametric, rank_law_check, rank_law_instances,
                        suite_example35, suite_structure)
from nfc.phase import PhaseRing
from test_first_level import random_f

LOW = [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (3, 0)]


def _match(key, forms):
    ct, coeffs = quadratic_first_level(3)
    return coeffs[key] == formula(forms[key], ct)


# ---------------------------------------------------------------- 1, 2

def test_criterion_1_closed_forms_as_quoted():
    t0 = time.time()
    quadratic_first_level(3)
    elapsed = time.time() - t0
    bad = [k for k in LOW + [(0, 3)] if not _match(k, closed_forms.REFERENCE)]
    ok = not bad and elapsed < 300
    record(1, ok, f"b10 b01 b11 b20 b02 b30 b03 as quoted; mismatches {bad}; {elapsed:.0f} s")
    assert ok


def test_criterion_1_companion_b03_mirror_image():
    bad = [k for k in LOW + [(0, 3)] if not _match(k, closed_forms.CORRECTED)]
    record("1 (companion)", not bad, "same seven coefficients with b03 denominators 16")
    assert not bad


def test_criterion_2_mixed_degree_three():
    bad = [k for k in ((2, 1), (1, 2)) if not _match(k, closed_forms.REFERENCE)]
    record(2, not bad, f"b21, b12 as quoted; mismatches {bad}")
    assert not bad


# ---------------------------------------------------------------- 3, 4, 5

def test_criterion_3_worked_matrix():
    t0 = time.time()
    ok, lines = suite_example35()
    ok = ok and time.time() - t0 < 1
    record(3, ok, "; ".join(lines))
    assert ok


def test_criterion_4_rank_law():
    inst = rank_law_instances()
    agree = sum(1 for rr, rs, l in inst if rank_law_check(rr, rs, l)[0] == rank_law_check(rr, rs, l)[1])
    ok = len(inst) >= 100 and agree == len(inst)
    record(4, ok, f"{agree}/{len(inst)} random instances follow the rank law")
    assert ok


def test_criterion_5_structure_constants():
    ok, lines = suite_structure(pairs=200, triples=100)
    record(5, ok, lines[0])
    assert ok


# ---------------------------------------------------------------- 6, 7

def test_criterion_6_conjugacy_round_trips():
    t0 = time.time()
    runs = fails = 0
    inst = conjugacy_instances(20)
    for N, seed, zero in inst:
        assert N <= 5 and nonresonant(OMEGA, 2 * N + 2)
        v = random_first_level(N, seed, zero)
        for orbital in (False, True):
            for res in level_chain(v, orbital):
                runs += 1
                fails += not replay(v, res)
    for seed in range(3):
        T, f = random_f(seed, cubic=True)
        ring = PhaseRing(SymbolTable([]), *OMEGA)
        runs += 1
        fails += not first_level_replay(ring, f, first_level(ring, f, 3))
    elapsed = time.time() - t0
    ok = fails == 0 and elapsed < 120
    record(6, ok, f"{runs - fails}/{runs} runs replayed exactly ({len(inst)} instances, state and orbital, "
                  f"every level, plus first level); {elapsed:.0f} s")
    assert ok


def _levels(v, N):
    out = []
    for s_fn, r_fn, inf_fn in ((level_s_plus_1, level_r_plus_1, infinite_level),
                               (orbital_s_plus_1, orbital_r_plus_1, orbital_infinite)):
        s = s_fn(v, N=N)
        r = r_fn(s)
        out.append((lambda x, f=s_fn: f(x, N=N), s))
        out.append((lambda x, f=s_fn, g=r_fn: g(f(x, N=N)), r))
        out.append((lambda x, f=inf_fn: f(x, N), inf_fn(v, N)))
    return out


def test_criterion_7_idempotence():
    checks = bad = 0
    for N, seed, zero in conjugacy_instances(8):
        v = random_first_level(min(N, 4), seed, zero)
        for op, res in _levels(v, min(N, 4)):
            again = op(res.field)
            checks += 1
            bad += again.terms != res.terms or any(st.generator for st in again.steps)
        w = random_parametric(3, 1, seed, zero)
        for op in (lambda x: parametric_s_plus_1(x, N=3), lambda x: parametric_infinite(x, 3)):
            res = op(w)
            again = op(type(w)(res.field, w.muNames, w.M))
            checks += 1
            bad += again.terms != res.terms
    record(7, bad == 0, f"{checks - bad}/{checks} level operations fix their own output")
    assert bad == 0


# ---------------------------------------------------------------- 8

@pytest.mark.parametrize("pivot_zero", [False, True])
def test_criterion_8_second_level_coefficient(pivot_zero):
    names = ["b01", "b11", "b20", "b02"] + ([] if pivot_zero else ["b10"])
    t = SymbolTable(names)
    b = {k: (RatFn.var(t, k) if k in names else RatFn.zero(t)) for k in ("b10", "b01", "b11", "b20", "b02")}
    gate = b["b01"] ** 2 * b["b20"] - b["b01"] * b["b10"] * b["b11"] + b["b10"] ** 2 * b["b02"]
    key, want = (E(2, 0), gate / b["b01"] ** 2) if pivot_zero else (E(0, 2), gate / b["b10"] ** 2)
    v = v0(t, *OMEGA) + LVec(t, {E(1, 0): b["b10"], E(0, 1): b["b01"], E(1, 1): b["b11"],
                               E(2, 0): b["b20"], E(0, 2): b["b02"]})
    engine = parametric_s_plus_1(v, N=2).mu_free().get(key)
    closed = second_level_coefficient(b["b10"], b["b01"], b["b11"], b["b20"], b["b02"])
    ok = engine == want and closed == (key, want)
    case = "b10 = 0, denominator b01^2" if pivot_zero else "b10 != 0, denominator b10^2"
    record(8, ok, f"symbolic second-level coefficient, {case}")
    assert ok


# ---------------------------------------------------------------- 9

Z10 = {("E", 1, 0)}


def _family(number, res, family, note):
    ok, missing, extra = compare_support(res, family)
    fmt = lambda S: sorted(str(b) + ("" if not any(m) else str(m)) for b, m in S)
    record(number, ok, f"{note} [{family}]; missing {fmt(missing)} extra {fmt(extra)}")
    return ok


def test_criterion_9_state_generic():
    res = infinite_level(random_first_level(7, 1), 7)
    assert res.classification.genericGate
    assert _family(9, res, "state-inf", "state, generic gate, b10 != 0")


def test_criterion_9_state_b10_zero_as_printed():
    res = infinite_level(random_first_level(7, 5, Z10), 7)
    assert _family(9, res, "state-inf3-printed", "state, b10 = 0, as printed")


def test_criterion_9_companion_state_b10_zero():
    res = infinite_level(random_first_level(7, 5, Z10), 7)
    assert _family("9 (companion)", res, "state-inf3", "state, b10 = 0, degree-2 Eulerian row kept")


def test_criterion_9_orbital_third_level_as_printed():
    res = orbital_infinite(random_first_level(7, 11, Z10), 7)
    assert _family(9, res, "orbital-third", "orbital, b10 = 0, as printed")


def test_criterion_9_companion_orbital_third_level():
    res = orbital_infinite(random_first_level(7, 11, Z10), 7)
    assert _family("9 (companion)", res, "orbital-third-both", "orbital, b10 = 0, Theta2 row kept")


def test_criterion_9_parametric_generic_as_printed():
    res = parametric_infinite(random_parametric(5, 2, 1), 5)
    assert res.caseTag == "s1r2-b10"
    assert _family(9, res, "param-case1", "parametric, generic gate, b10(0) != 0, as printed")


def test_criterion_9_companion_parametric_generic():
    res = parametric_infinite(random_parametric(5, 2, 1), 5)
    assert _family("9 (companion)", res, "param-case1-theta1", "parametric, generic, Theta1 tail kept")


# ---------------------------------------------------------------- 10

def test_criterion_10_mu_zero_commutation():
    bad = []
    for seed in range(10):
        N, M = (4 if seed % 2 else 3), (2 if seed % 3 else 1)
        w = random_parametric(N, M, seed, Z10 if seed % 3 == 2 else ())
        P = parametric_infinite(w, N)
        F, t = lvec_to_field(w.field, w.muNames)
        O = orbital_infinite(LVec(t, {b: c for (b, mu), c in F.items() if not any(mu)}), N)
        st = P.setting
        K = st.last_grade()
        a = {b: c for (b, mu), c in P.terms.items() if not any(mu) and st.grade((b, mu)) <= K}
        o = {b: c for (b, mu), c in O.terms.items() if st.grade((b, mu + (0,) * (1 - len(mu)))) <= K}
        if a != o:
            bad.append(seed)
    record(10, not bad, f"{10 - len(bad)}/10 parametric runs at mu = 0 equal the orbital run; failing seeds {bad}")
    assert not bad


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
