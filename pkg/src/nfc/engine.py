"""Grade-by-grade hypernormalization over a graded set of generators.

A field is a dict {(BasisElem, mu): RatFn} where mu is the exponent tuple of
the parameter monomial (empty without parameters).  Generators are either
state elements ("S", BasisElem, mu) acting by the bracket, or time factors
("T", (m, n), mu) acting by multiplication with Z_{m,n} mu^mu.

At grade k the admissible generators are those of grade in [k-L+1, k]
(every grade when the level cap L is None) whose first-order effect vanishes
in all grades below k.  Their grade-k effects span the removable space; the
removed terms are picked greedily in priority order and the rest survive.
"""

from dataclasses import dataclass, field
from itertools import product

from gmpy2 import mpq

from .lie import KINDS, BasisElem, Grading, LVec, TimeGen, bracket_basis
from .matrix import INCONSISTENT, greedy_rows, rf_nullspace, rf_solve
from .poly import Poly, SymbolTable
from .ratfn import RatFn

_KIND_RANK = {"E": 0, "T1": 1, "T2": 2}


# ---------------------------------------------------------------- fields

def mu_add(a, b):
    return tuple(x + y for x, y in zip(a, b)) if a else b


def lvec_to_field(v: LVec, mu_names=(), table=None):
    """Split coefficients by parameter monomial; returns (field, coefficient table)."""
    src = v.table
    mu_idx = [src.index[m] for m in mu_names if m in src.index]
    if table is None:
        rest = [nm for nm in src.names if nm not in set(mu_names)]
        kinds = dict(zip(src.names, src.kinds))
        table = SymbolTable(rest, kinds)
    F = {}
    zero_mu = tuple(0 for _ in mu_names)
    for b, c in v.items():
        if not mu_idx:
            F[(b, zero_mu)] = c.retable(table) if src != table else c
            continue
        if c.den.vars() & set(mu_idx):
            raise ValueError("parameter in a denominator")
        den = c.den.retable(table)
        for es, p in c.num.split_vars(mu_idx).items():
            full = [0] * len(mu_names)
            for i, e in zip(sorted(mu_idx), es):
                full[[src.index[m] for m in mu_names].index(i)] = e
            F[(b, tuple(full))] = RatFn(p.retable(table), den)
    return {k: x for k, x in F.items() if not x.is_zero()}, table


def field_to_lvec(F, table: SymbolTable, mu_names=()):
    """Inverse of lvec_to_field; table must contain the parameter symbols."""
    acc = {}
    for (b, mu), c in F.items():
        c = c.retable(table) if c.table != table else c
        if any(mu):
            exps = [0] * table.n
            for nm, e in zip(mu_names, mu):
                exps[table.index[nm]] = e
            c = c * RatFn.from_poly(Poly.monomial(table, exps))
        acc[b] = acc[b] + c if b in acc else c
    return LVec(table, acc)


def field_add(F, G):
    out = dict(F)
    for k, c in G.items():
        if k in out:
            s = out[k] + c
            if s.is_zero():
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = c
    return out


def field_scale(F, c):
    if c.is_zero():
        return {}
    return {k: x * c for k, x in F.items()}


# ---------------------------------------------------------------- generators

@dataclass(frozen=True)
class Setting:
    """Everything fixed during one normalization stage."""
    grading: Grading
    cap: object            # level cap L, or None for the infinite level
    N: int                 # Eulerian degree truncation m+n <= N
    M: int = 0             # parameter truncation |mu| <= M
    nmu: int = 0
    state: bool = True     # state generators in [L, L]
    time: bool = False     # time rescaling by Z_{m,n}
    mu_euler: bool = False  # E_{0,0} mu^m with |m| >= 1
    kmax: int = None       # last grade processed (default: last complete grade)
    theta_state: bool = True  # rotational state generators
    time_filter: object = None  # optional predicate on time generators

    def grade(self, key):
        b, mu = key
        return self.grading.grade(b, sum(mu))

    def gen_grade(self, g):
        kind, x, mu = g
        if kind == "S":
            return self.grading.grade(x, sum(mu))
        return x[0] + x[1] + self.grading.muWeight * sum(mu)

    def tracked(self, key):
        b, mu = key
        return b.m + b.n <= self.N and sum(mu) <= self.M

    def last_grade(self):
        if self.kmax is not None:
            return self.kmax
        k = self.N
        if self.nmu and self.grading.muWeight:
            k = min(k, self.grading.muWeight * (self.M + 1) - 1)
        return k


def mu_monomials(nmu, M):
    if nmu == 0:
        return [()]
    out = [e for e in product(range(M + 1), repeat=nmu) if sum(e) <= M]
    return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))


def generators_of_grade(st: Setting, g: int):
    """All generators of grade exactly g."""
    out = []
    w = st.grading.muWeight
    for mu in mu_monomials(st.nmu, st.M):
        d = sum(mu)
        base = g - w * d
        if base < 0:
            continue
        if st.state:
            kinds = KINDS if st.theta_state else ("E",)
            for kind in kinds:
                deg = base - st.grading.offset(kind)
                if deg < 0:
                    continue
                for n in range(deg + 1):
                    b = BasisElem(kind, deg - n, n)
                    if deg == 0:
                        if not (kind == "E" and d and st.mu_euler):
                            continue
                    out.append(("S", b, mu))
        if st.time:
            for n in range(base + 1):
                mn = (base - n, n)
                if base == 0 and not d:
                    continue
                g_ = ("T", mn, mu)
                if st.time_filter is None or st.time_filter(g_):
                    out.append(g_)
    return out


def gen_effect(g, F, st: Setting, max_grade=None):
    """First-order effect of a unit generator on F, restricted to tracked keys."""
    kind, x, gmu = g
    out = {}
    for (b, mu), c in F.items():
        nmu = mu_add(gmu, mu)
        if sum(nmu) > st.M:
            continue
        if kind == "S":
            r = bracket_basis(x, b)
            if r is None:
                continue
            s, e = r
            key = (e, nmu)
            val = c * s
        else:
            key = (b.shift(*x), nmu)
            val = c
        if not st.tracked(key):
            continue
        if max_grade is not None and st.grade(key) > max_grade:
            continue
        out[key] = out[key] + val if key in out else val
    return {k: v for k, v in out.items() if not v.is_zero()}


def apply_generator(Y, F, st: Setting, max_terms=200):
    """exp(rho(Y)) F truncated to tracked keys; Y = {generator: RatFn}."""
    total = dict(F)
    term = dict(F)
    n = 0
    while term:
        n += 1
        if n > max_terms:
            raise RuntimeError("generator series did not terminate")
        nxt = {}
        for g, c in Y.items():
            nxt = field_add(nxt, field_scale(gen_effect(g, term, st), c))
        term = {k: v * mpq(1, n) for k, v in nxt.items()}
        total = field_add(total, term)
    return total


def key_priority(key, st: Setting):
    b, mu = key
    return (st.grade(key), _KIND_RANK[b.kind], sum(mu), b.n, tuple(-x for x in mu))


# ---------------------------------------------------------------- one grade

@dataclass
class Step:
    grade: int
    generator: dict                 # {generator: RatFn}
    removed: list = field(default_factory=list)

    def state_part(self, table):
        terms = {}
        for (kind, x, mu), c in self.generator.items():
            if kind == "S":
                terms[(x, mu)] = c
        return terms

    def time_part(self):
        return {(x, mu): c for (kind, x, mu), c in self.generator.items() if kind == "T"}


def removable(F, st: Setting, k: int, table):
    """(generators, image matrix rows keyed by grade-k keys in priority order, key list).

    The image columns span {grade-k effect of admissible generator combinations}."""
    lo = 1 if st.cap is None else max(1, k - st.cap + 1)
    gens = []
    for g in range(lo, k + 1):
        gens.extend(generators_of_grade(st, g))
    effects = [gen_effect(g, F, st, max_grade=k) for g in gens]
    keep = [i for i, e in enumerate(effects) if e]
    gens = [gens[i] for i in keep]
    effects = [effects[i] for i in keep]
    if not gens:
        return [], None, []
    lower = sorted({key for e in effects for key in e if st.grade(key) < k}, key=lambda kk: key_priority(kk, st))
    target = {key for e in effects for key in e if st.grade(key) == k}
    target |= {key for key in F if st.grade(key) == k}
    target = sorted(target, key=lambda kk: key_priority(kk, st))
    zero = RatFn.zero(table)
    if lower:
        cons = [[e.get(key, zero) for e in effects] for key in lower]
        basis = rf_nullspace(cons, len(gens), table)
    else:
        one = RatFn.one(table)
        basis = [[one if i == j else zero for i in range(len(gens))] for j in range(len(gens))]
    if not basis:
        return gens, [], target
    img = []
    for key in target:
        row = []
        for vec in basis:
            acc = zero
            for c, e in zip(vec, effects):
                if c.is_zero():
                    continue
                x = e.get(key)
                if x is not None:
                    acc = acc + c * x
            row.append(acc)
        img.append(row)
    return gens, (img, basis), target


def normalize_grade(F, st: Setting, k: int, table):
    """Remove what grade k allows.  Returns (new field, Step or None)."""
    gens, data, target = removable(F, st, k, table)
    if not gens or not data or not data[0]:
        return F, None
    img, basis = data
    rows = greedy_rows(img, table)
    if not rows:
        return F, None
    zero = RatFn.zero(table)
    rhs = [-F.get(target[i], zero) for i in rows]
    if all(x.is_zero() for x in rhs):
        return F, Step(k, {}, [target[i] for i in rows])
    sol = rf_solve_rows([img[i] for i in rows], rhs, table)
    Y = {}
    for y, vec in zip(sol, basis):
        if y.is_zero():
            continue
        for g, c in zip(gens, vec):
            if c.is_zero():
                continue
            Y[g] = Y[g] + y * c if g in Y else y * c
    Y = {g: c for g, c in Y.items() if not c.is_zero()}
    G = apply_generator(Y, F, st)
    for i in rows:
        if not G.get(target[i], zero).is_zero():
            raise ArithmeticError(f"elimination failed at {target[i]}")
    return G, Step(k, Y, [target[i] for i in rows])


def rf_solve_rows(rows, rhs, table):
    from .matrix import RFMatrix
    M = RFMatrix(len(rows), len(rows[0]), [x for r in rows for x in r])
    sol = rf_solve(M, rhs)
    if sol is INCONSISTENT:
        raise ArithmeticError("homological system inconsistent")
    return sol


def run_stage(F, st: Setting, table, steps=None, kmin=1):
    steps = [] if steps is None else steps
    for k in range(kmin, st.last_grade() + 1):
        F, step = normalize_grade(F, st, k, table)
        if step is not None and step.generator:
            steps.append(step)
    return F, steps


def eliminable_keys(F, st: Setting, k: int, table):
    """Grade-k keys the stage could remove (without changing F)."""
    gens, data, target = removable(F, st, k, table)
    if not gens or not data or not data[0]:
        return []
    return [target[i] for i in greedy_rows(data[0], table)]


def truncate_field(F, st: Setting):
    return {k: v for k, v in F.items() if st.tracked(k)}


def within(F, st: Setting):
    """The part of F lying in completely processed grades."""
    K = st.last_grade()
    return {k: v for k, v in F.items() if st.grade(k) <= K}


def support(F, st: Setting = None):
    keys = F if st is None else within(F, st)
    return {k for k, v in keys.items() if not v.is_zero()}


def steps_to_generators(steps, table):
    """(state LVec, TimeGen) per step, parameter-free steps only."""
    out = []
    for s in steps:
        S = LVec(table, {x: c for (kind, x, mu), c in s.generator.items() if kind == "S" and not any(mu)})
        T = TimeGen(table, {x: c for (kind, x, mu), c in s.generator.items() if kind == "T" and not any(mu)})
        out.append((s.grade, T, S))
    return out
