"""Stage plumbing shared by the state, orbital and parametric pipelines.

A pipeline is a list of stages; each stage is an engine Setting run over the
working field.  The result keeps the raw tracked field, the part lying in
completely processed grades, the step log and per-coefficient level labels.
"""

from dataclasses import dataclass, field

from .classification import (Classification, Finite, PivotError, UnresolvedBeyond, classify_rows,
                             detect_s_p, detect_si_pi)
from .engine import Setting, field_to_lvec, lvec_to_field, run_stage, within
from .lie import BasisElem, LVec
from .poly import SymbolTable
from .ratfn import RatFn

@dataclass
class Stage:
    name: str          # level tag reached after this stage
    setting: Setting
    steps: list = field(default_factory=list)
    level: object = None   # numeric level used in coefficient labels, or "inf"


@dataclass
class Survivor:
    basis: BasisElem
    mu: tuple
    coeff: RatFn
    label: str

    def __str__(self):
        return f"{self.label} {self.basis}" + (f" mu^{self.mu}" if any(self.mu) else "")


@dataclass
class NormalFormResult:
    levelTag: str
    field: LVec
    classification: Classification
    steps: list
    survivors: list
    mode: str = "state"
    N: int = 0
    M: int = 0
    muNames: tuple = ()
    terms: dict = None         # {(BasisElem, mu): RatFn} over the processed grades
    raw: dict = None           # full tracked field, including unprocessed grades
    table: SymbolTable = None  # coefficient table without parameters
    stages: list = field(default_factory=list)
    caseTag: str = ""
    caveats: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)  # key -> level that last changed it

    @property
    def setting(self):
        return self.stages[-1].setting if self.stages else None

    def processed_grade(self):
        st = self.setting
        return st.last_grade() if st is not None else self.N

    def support(self):
        return {k for k, c in self.terms.items() if not c.is_zero()}

    def mu_free(self) -> LVec:
        """The parameter-free slice as an LVec over the coefficient table."""
        return LVec(self.table, {b: c for (b, mu), c in self.terms.items() if not any(mu)})


def field_of(v: LVec, mu_names=()):
    return lvec_to_field(v, tuple(mu_names))


def require_pivot(v: LVec, a, b):
    if v.get(BasisElem("E", a, b)).is_zero():
        raise PivotError(f"pivot coefficient b_{{{a},{b}}} vanishes")


def run_pipeline(F, table, stages, log=None):
    """Run stages in order; returns (final field, per-key level labels)."""
    labels = {}
    for st in stages:
        before = dict(F)
        F, steps = run_stage(F, st.setting, table)
        st.steps = steps
        changed = {k for k in set(before) | set(F) if before.get(k) != F.get(k)}
        for k in changed:
            labels[k] = st.level
        if log is not None:
            log(st)
    return F, labels


def _label(key, level):
    b, mu = key
    sup = "" if level in (None, 1) else f"({'∞' if level == 'inf' else level})"
    if b.kind == "E":
        return f"b^{{{sup}}}_{{{b.m},{b.n}}}" if sup else f"b_{{{b.m},{b.n}}}"
    i = 1 if b.kind == "T1" else 2
    return f"a^{{{i}{sup}}}_{{{b.m},{b.n}}}"


def build_result(F, table, stages, labels, mode, N, M=0, mu_names=(), cl=None, caseTag="", caveats=()):
    last = stages[-1].setting if stages else None
    terms = within(F, last) if last is not None else dict(F)
    terms = {k: c for k, c in terms.items() if not c.is_zero()}
    order = (lambda k: (last.grade(k), k[0].kind, sum(k[1]), k[0].n, k[1])) if last else (lambda k: k)
    survivors = [Survivor(k[0], k[1], terms[k], _label(k, labels.get(k)))
                 for k in sorted(terms, key=order)]
    if mu_names:
        full = table.extend(list(mu_names), {m: "parameter" for m in mu_names})
        lv = field_to_lvec(terms, full, mu_names)
    else:
        lv = LVec(table, {b: c for (b, mu), c in terms.items()})
    tag = stages[-1].name if stages else "first"
    steps = [x for st in stages for x in st.steps]
    return NormalFormResult(tag, lv, cl if cl is not None else Classification(None, None), steps, survivors,
                            mode, N, M, tuple(mu_names), terms, dict(F), table, list(stages), caseTag,
                            list(caveats), dict(labels))


def classify_output(v: LVec, N, s=None, p=None):
    """Classification read off a field whose s-row and r-row are final."""
    if s is None:
        s, p = detect_s_p(v, N)
    if isinstance(s, Finite):
        cl = classify_rows(v, N)
        return cl
    cl = Classification(s, p)
    cl.s1, cl.p1 = detect_si_pi(v, 1, N)
    cl.s2, cl.p2 = detect_si_pi(v, 2, N)
    return cl


def unresolved_caveats(cl: Classification):
    out = []
    for name in ("s", "r", "s1", "s2"):
        x = getattr(cl, name)
        if isinstance(x, UnresolvedBeyond):
            out.append(f"{name} unresolved up to degree {x.N}; conclusions relying on {name} = infinity hold up to that degree only")
    return out


def reclassify(res, N):
    """Re-read the invariants from a result and add any new unresolved caveats."""
    res.classification = classify_output(res.mu_free(), N)
    res.caveats += [c for c in unresolved_caveats(res.classification) if c not in res.caveats]
    return res


def max_degree(v: LVec):
    return max((b.m + b.n for b in v.support()), default=0)
