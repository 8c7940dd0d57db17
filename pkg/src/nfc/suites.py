"""Built-in verification suites behind `nfc verify`.

Each suite returns a SuiteResult; failures carry exact symbolic diffs.
"""

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from . import closed_forms
from .classification import block_matrix, conv_matrix, partition, rank_predict, schur_u
from .first_level import coefficient_table, first_level
from .lie import KINDS, BasisElem, Grading, LVec, E, T1, T2, bracket, grade_of, v0
from .matrix import RFMatrix, rf_rank
from .oracles import replay
from .orbital import orbital_infinite, orbital_r_plus_1, orbital_s_plus_1
from .parametric import second_level_coefficient, parametric_s_plus_1
from .parser import PHASE_REAL, evaluate, formula, parse_expression
from .phase import PhaseRing
from .poly import SymbolTable
from .ratfn import RatFn
from .report import format_coeff
from .state import infinite_level, level_r_plus_1, level_s_plus_1

SUITES = ("cor62", "appendix", "example35", "ranklemma", "structure", "conjugacy", "thm57")


@dataclass
class SuiteResult:
    name: str
    ok: bool
    lines: list = field(default_factory=list)
    seconds: float = 0.0

    def text(self):
        head = f"{self.name}: {'pass' if self.ok else 'FAIL'} ({self.seconds:.1f} s)"
        return "\n".join([head] + ["  " + x for x in self.lines]) + "\n"


def _rng(seed):
    return random.Random(seed)


def _rat(rng, nonzero=True):
    a = rng.randint(-9, 9)
    if nonzero and a == 0:
        a = 1
    return mpq(a, rng.randint(1, 5))


# ---------------------------------------------------------------- quadratic input

QUADRATIC_SYMBOLS = tuple(PHASE_REAL) + ("omega1", "omega2") + tuple(f"a{i}" for i in range(1, 15))


@lru_cache(maxsize=None)
def quadratic_first_level(n=3):
    """First-level coefficients for the fully symbolic quadratic f, up to grade n."""
    T = SymbolTable(QUADRATIC_SYMBOLS)
    f = evaluate(parse_expression(closed_forms.QUADRATIC_F), T)
    ct = coefficient_table(T)
    out = first_level(PhaseRing(ct), f, n)
    return ct, out.coefficients


def _compare(keys, forms):
    ct, coeffs = quadratic_first_level(3)
    ok, lines = True, []
    for key in keys:
        want = formula(forms[key], ct)
        got = coeffs[key]
        name = f"b_{{{key[0]},{key[1]}}}"
        if got == want:
            lines.append(f"{name}: match")
            continue
        ok = False
        d = got - want
        lines.append(f"{name}: differs; computed - expected = {format_coeff(d)}")
    return ok, lines


def suite_cor62():
    keys = [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (3, 0), (0, 3)]
    ok, lines = _compare(keys, closed_forms.CORRECTED)
    ct, coeffs = quadratic_first_level(3)
    quoted = formula(closed_forms.REFERENCE[(0, 3)], ct)
    if coeffs[(0, 3)] != quoted:
        lines.append("note: b_{0,3} with denominators 64 does not match; the mirror image of b_{3,0} (denominators 16) does")
    return ok, lines


def suite_appendix():
    return _compare([(2, 1), (1, 2)], closed_forms.REFERENCE)


# ---------------------------------------------------------------- small worked matrix

def example_block(a20, a11, a02, a03, a12):
    """Rows of the 6 x 7 grade-5 matrix (M_s columns first) for s = 2, r = 3, l = 2."""
    t = SymbolTable([])
    c = lambda x: RatFn.const(t, x)
    row_s = [c(a20), c(a11), c(a02)]
    row_r = [c(0), c(0), c(a12), c(a03)]
    Mblock = block_matrix(row_r, row_s, 2)
    display = conv_matrix(row_s, 4).hstack(conv_matrix(row_r, 3))
    return t, Mblock, display


def suite_example35():
    a20, a11, a02, a03, a12 = mpq(1), mpq(1), mpq(1, 4), mpq(1), mpq(2)
    t, Mblock, display = example_block(a20, a11, a02, a03, a12)
    z = mpq(0)
    expect = [[a20, z, z, z, z, z, z],
              [a11, a20, z, z, z, z, z],
              [a02, a11, a20, z, a12, z, z],
              [z, a02, a11, a20, a03, a12, z],
              [z, z, a02, a11, z, a03, a12],
              [z, z, z, a02, z, z, a03]]
    lines, ok = [], True
    if display != RFMatrix.from_rows(expect, t):
        ok = False
        lines.append(f"assembled matrix differs: {display}")
    rank = rf_rank(Mblock)
    P = partition(Mblock, 0, 2, 2, 3, 2, recipe="left")
    S = P.schur()
    u = schur_u(Mblock, 0, 2, 2, 3, 2, recipe="left")
    lines.append(f"rank = {rank}, C - D B^-1 A = {[str(x) for x in S.data]}, u_2 = {u}")
    ok &= rank == 5 and S.is_zero() and S.cols == 2 and u == 0
    _, M2, _ = example_block(a20, a11, a02, mpq(1), mpq(0))
    rank2 = rf_rank(M2)
    P2 = partition(M2, 0, 3, 2, 3, 2, recipe="left")
    diag = P2.B == RFMatrix.identity(t, 3)
    lines.append(f"variant a12 = 0: rank = {rank2}, B = a03 I: {diag}, A columns = {P2.A.cols}")
    ok &= rank2 == 6 and diag and P2.A.cols == 1
    return ok, lines


# ---------------------------------------------------------------- rank law

def rank_law_instances(count=120, seed=4):
    """Random (row_r, row_s, l) triples with some sparse rows, so that both branches occur."""
    rng = _rng(seed)
    t = SymbolTable([])
    out = []
    while len(out) < count:
        s = rng.randint(1, 5)
        r = rng.randint(s + 1, 6)
        dens = rng.choice((1.0, 0.6, 0.3))

        def row(d):
            while True:
                x = [_rat(rng) if rng.random() < dens else mpq(0) for _ in range(d + 1)]
                if any(x):
                    return [RatFn.const(t, y) for y in x]
        out.append((row(r), row(s), rng.randint(0, 10)))
    return out


def rank_law_check(row_r, row_s, l):
    r, s = len(row_r) - 1, len(row_s) - 1
    alpha = rf_rank(block_matrix(row_r, row_s, s))
    got = rf_rank(block_matrix(row_r, row_s, l))
    want, _ = rank_predict(l, alpha, r, s)
    return got, want


def suite_ranklemma():
    bad = []
    inst = rank_law_instances()
    for i, (rr, rs, l) in enumerate(inst):
        got, want = rank_law_check(rr, rs, l)
        if got != want:
            bad.append(f"instance {i} (r={len(rr) - 1}, s={len(rs) - 1}, l={l}): rank {got}, law {want}")
    return not bad, [f"{len(inst) - len(bad)}/{len(inst)} instances agree"] + bad


# ---------------------------------------------------------------- bracket axioms

def random_lvec(rng, table, maxdeg=4, terms=4):
    out = {}
    for _ in range(terms):
        d = rng.randint(0, maxdeg)
        j = rng.randint(0, d)
        out[BasisElem(rng.choice(KINDS), d - j, j)] = RatFn.const(table, _rat(rng))
    return LVec(table, out)


def suite_structure(pairs=200, triples=100, seed=5):
    rng = _rng(seed)
    t = SymbolTable([])
    bad = []
    for i in range(pairs):
        x, y = random_lvec(rng, t), random_lvec(rng, t)
        if bracket(x, y) != -bracket(y, x):
            bad.append(f"antisymmetry fails on pair {i}")
    for i in range(triples):
        x, y, z = (random_lvec(rng, t, 3, 3) for _ in range(3))
        j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        if not j.is_zero():
            bad.append(f"Jacobi fails on triple {i}")
    for i in range(pairs):
        g = Grading(rng.randint(0, 4), 0)
        a = BasisElem(rng.choice(KINDS), rng.randint(0, 3), rng.randint(0, 3))
        b = BasisElem(rng.choice(KINDS), rng.randint(0, 3), rng.randint(0, 3))
        c = bracket(LVec.single(t, a), LVec.single(t, b))
        want = grade_of(a, g) + grade_of(b, g)
        for key in c.support():
            if grade_of(key, g) != want:
                bad.append(f"grade additivity fails for [{a}, {b}] at offset {g.thetaOffset}")
    n = pairs + triples + pairs
    return not bad, [f"{n - len(bad)}/{n} identities hold (antisymmetry {pairs}, Jacobi {triples}, grading {pairs})"] + bad


# ---------------------------------------------------------------- conjugacy

OMEGA = (mpq(1), mpq(17, 7))


def nonresonant(omega, order):
    """No integer relation k1 w1 + k2 w2 = 0 with 0 < |k1| + |k2| <= order."""
    w1, w2 = omega
    return all(k1 * w1 + k2 * w2 != 0 for k1 in range(-order, order + 1) for k2 in range(-order, order + 1)
               if 0 < abs(k1) + abs(k2) <= order)


def random_first_level(N, seed, zero=(), omega=OMEGA):
    """Random numeric first-level field up to degree N; keys in zero are left out."""
    rng = _rng(seed)
    t = SymbolTable(["c"])
    c = lambda x: RatFn.const(t, x)
    terms = {T1(0, 0): c(omega[0]), T2(0, 0): c(omega[1])}
    for d in range(1, N + 1):
        for j in range(d + 1):
            if ("E", d - j, j) not in zero:
                terms[E(d - j, j)] = c(_rat(rng))
            terms[T1(d - j, j)] = c(_rat(rng))
            terms[T2(d - j, j)] = c(_rat(rng))
    return LVec(t, terms)


def level_chain(v, orbital=False):
    """Results of every level on v: s+1, r+1 and infinite."""
    if orbital:
        s1 = orbital_s_plus_1(v)
        return [s1, orbital_r_plus_1(s1), orbital_infinite(v)]
    s1 = level_s_plus_1(v)
    return [s1, level_r_plus_1(s1), infinite_level(v)]


def conjugacy_instances(count=20):
    out = []
    for seed in range(count):
        N = 4 if seed % 3 else 5
        zero = {("E", 1, 0)} if seed % 2 else set()
        out.append((N, seed, zero))
    return out


def suite_conjugacy(count=20):
    bad = []
    checks = 0
    for N, seed, zero in conjugacy_instances(count):
        if not nonresonant(OMEGA, 2 * N + 2):
            bad.append(f"frequencies resonant up to order {2 * N + 2}")
            break
        v = random_first_level(N, seed, zero)
        for orbital in (False, True):
            for res in level_chain(v, orbital):
                checks += 1
                if not replay(v, res):
                    mode = "orbital" if orbital else "state"
                    bad.append(f"seed {seed} {mode} {res.levelTag}: replayed generators do not reach the output")
    return not bad, [f"{checks - len(bad)}/{checks} level runs reproduced on {count} instances"] + bad


# ---------------------------------------------------------------- second-level coefficient

def suite_thm57():
    lines, ok = [], True
    for zero10 in (False, True):
        names = ["b01", "b11", "b20", "b02"] + ([] if zero10 else ["b10"])
        t = SymbolTable(names)
        b = {k: (RatFn.var(t, k) if k in names else RatFn.zero(t)) for k in ("b10", "b01", "b11", "b20", "b02")}
        gate = b["b01"] ** 2 * b["b20"] - b["b01"] * b["b10"] * b["b11"] + b["b10"] ** 2 * b["b02"]
        key, want = (E(2, 0), gate / b["b01"] ** 2) if zero10 else (E(0, 2), gate / b["b10"] ** 2)
        v = v0(t, *OMEGA) + LVec(t, {E(1, 0): b["b10"], E(0, 1): b["b01"], E(1, 1): b["b11"],
                                   E(2, 0): b["b20"], E(0, 2): b["b02"]})
        got = parametric_s_plus_1(v, N=2).mu_free().get(key)
        key2, closed = second_level_coefficient(b["b10"], b["b01"], b["b11"], b["b20"], b["b02"])
        case = "b10 = 0" if zero10 else "b10 != 0"
        good = got == want and key2 == key and closed == want
        ok &= good
        lines.append(f"{case}: {key} coefficient = {format_coeff(got)}" + ("" if good else f" (expected {format_coeff(want)})"))
    return ok, lines


_RUNNERS = {
    "cor62": suite_cor62,
    "appendix": suite_appendix,
    "example35": suite_example35,
    "ranklemma": suite_ranklemma,
    "structure": suite_structure,
    "conjugacy": suite_conjugacy,
    "thm57": suite_thm57,
}


def verify(name) -> SuiteResult:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.time()
    ok, lines = _RUNNERS[name]()
    return SuiteResult(name, bool(ok), lines, time.time() - t0)


def random_parametric(N, M, seed, zero=(), omega=OMEGA):
    """Random one-parameter first-level family; keys in zero are left out at mu^0."""
    from .engine import field_to_lvec
    from .parametric import ParamLVec
    rng = _rng(seed)
    t = SymbolTable(["c"])
    c = lambda x: RatFn.const(t, x)
    F = {(T1(0, 0), (0,)): c(omega[0]), (T2(0, 0), (0,)): c(omega[1])}
    for d in range(N + 1):
        for j in range(d + 1):
            for m in range(M + 1):
                if d == 0 and m == 0:
                    continue
                if not (("E", d - j, j) in zero and m == 0):
                    F[(E(d - j, j), (m,))] = c(_rat(rng))
                F[(T1(d - j, j), (m,))] = c(_rat(rng))
                F[(T2(d - j, j), (m,))] = c(_rat(rng))
    full = t.extend(["mu1"], {"mu1": "parameter"})
    return ParamLVec(field_to_lvec(F, full, ("mu1",)), ("mu1",), M)
