"""From parsed input to pipeline results and reports."""

import hashlib
from dataclasses import dataclass

from gmpy2 import mpq

from .classification import Classification, detect_s_p, detect_si_pi
from .engine import lvec_to_field
from .first_level import NormalizationError, first_level
from .levels import classify_output, unresolved_caveats
from .lie import BasisElem, LVec, v0
from .orbital import orbital_infinite, orbital_s_plus_1
from .parametric import ParamLVec, parametric_infinite, parametric_s_plus_1
from .parser import PHASE_REAL, InputSpec, evaluate
from .phase import PhaseRing
from .poly import Poly, SymbolTable
from .ratfn import RatFn
from .report import Report, Term, step_digest
from .state import infinite_level, level_s_plus_1

DEFAULT_N = 3


class InputError(ValueError):
    """Input that parses but cannot be normalized as given."""


@dataclass
class Problem:
    mode: str
    N: int
    M: int
    table: SymbolTable      # coefficients, frequencies and parameters
    muNames: tuple
    field: LVec             # first-level field
    ring: PhaseRing = None
    f: Poly = None
    first: object = None    # FirstLevelOutput when the input was f

    def model(self):
        if self.mode == "parametric":
            return ParamLVec(self.field, self.muNames, self.M)
        return self.field


def _settings(spec: InputSpec, mode, N, M, subst):
    mode = mode or spec.mode
    N = N if N is not None else (spec.N if spec.N is not None else DEFAULT_N)
    M = M if M is not None else (spec.M if spec.M is not None else (1 if mode == "parametric" else 0))
    if N < 1:
        raise InputError("degree must be at least 1")
    values = dict(spec.subst)
    values.update(subst or {})
    return mode, N, M, {k: mpq(v) for k, v in values.items()}


def prepare(spec: InputSpec, mode=None, N=None, M=None, subst=None) -> Problem:
    mode, N, M, values = _settings(spec, mode, N, M, subst)
    params = tuple(spec.parameters)
    if params and mode != "parametric":
        raise InputError("parameters are declared; use mode parametric")
    for nm in values:
        if nm in params:
            raise InputError(f"cannot substitute the parameter {nm}")
        if nm in PHASE_REAL:
            raise InputError(f"cannot substitute the phase variable {nm}")
    freqs = []
    for w in spec.frequencies:
        freqs.append(values[w] if isinstance(w, str) and w in values else w)
    coeffs = [nm for nm in spec.coefficient_names() if nm not in values]
    known = set(spec.coefficient_names()) | {w for w in spec.frequencies if isinstance(w, str)}
    for nm in values:
        if nm not in known:
            raise InputError(f"subst names unknown symbol {nm!r}")
    kinds = {w: "frequency" for w in freqs if isinstance(w, str)}
    kinds.update({m: "parameter" for m in params})
    names = [w for w in freqs if isinstance(w, str)] + [c for c in coeffs if c not in params] + list(params)
    table = SymbolTable(names, kinds)
    subst_names = [nm for nm in values if nm not in names]

    def value(node, over):
        full = over.extend(subst_names)
        p = evaluate(node, full).subs(values)
        return p.retable(over)

    for g in ("g1", "g2"):
        node = getattr(spec, g)
        if node is not None:
            real = SymbolTable(PHASE_REAL + table.names)
            if not value(node, real).is_zero():
                raise InputError(f"{g} must be zero: rotational input is accepted only as a coefficient table "
                                 "(a1[m,n], a2[m,n]) of a first-level field")
    prob = Problem(mode, N, M, table, params, None)
    if spec.table:
        prob.field = _table_field(spec, table, freqs, params, N, value)
        return prob
    real = SymbolTable(PHASE_REAL + table.names)
    f = value(spec.f, real) if spec.f is not None else Poly.zero(real)
    ring = PhaseRing(table, *freqs)
    try:
        out = first_level(ring, f, N, mu_names=params, M=M)
    except NormalizationError as e:
        raise InputError(str(e)) from None
    prob.ring, prob.f, prob.first, prob.field = ring, f, out, out.normalForm
    return prob


def _table_field(spec, table, freqs, params, N, value):
    v = v0(table, *freqs)
    for (kind, m, n), node in sorted(spec.table.items()):
        if m + n > N:
            continue
        c = RatFn.from_poly(value(node, table))
        if c.is_zero():
            continue
        if m + n == 0:
            free = c.num.subs({p: 0 for p in params})
            if not free.is_zero():
                what = {"E": "b", "T1": "a1", "T2": "a2"}[kind]
                raise InputError(f"{what}[0,0] must vanish at zero parameters")
        v = v + LVec(table, {BasisElem(kind, m, n): c})
    return v


# ---------------------------------------------------------------- reports

def _label(b: BasisElem):
    if b.kind == "E":
        return f"b_{{{b.m},{b.n}}}"
    return f"a^{{{1 if b.kind == 'T1' else 2}}}_{{{b.m},{b.n}}}"


def _order(key):
    b, mu = key
    return (b.m + b.n, {"E": 0, "T1": 1, "T2": 2}[b.kind], sum(mu), b.n, mu)


def _base(prob: Problem, command, level, cl, table):
    return Report(command, prob.mode, prob.N, prob.M, level, "", cl.as_dict() if cl else {},
                  tuple(table.names), tuple(prob.muNames))


def _is_v0(terms):
    return all(b.kind != "E" and b.m + b.n == 0 and not any(mu) for b, mu in terms)


def first_level_report(prob: Problem) -> Report:
    F, table = lvec_to_field(prob.field, prob.muNames)
    v = LVec(table, {b: c for (b, mu), c in F.items() if not any(mu)})
    s, p = detect_s_p(v, prob.N)
    cl = Classification(s, p)
    if not hasattr(s, "value"):
        cl.s1, cl.p1 = detect_si_pi(v, 1, prob.N)
        cl.s2, cl.p2 = detect_si_pi(v, 2, prob.N)
    r = _base(prob, "first-level", "first", cl, table)
    r.terms = [Term(b.kind, b.m, b.n, mu, _label(b), F[(b, mu)]) for b, mu in sorted(F, key=_order)]
    h = hashlib.sha256()
    gens = prob.first.generators if prob.first else []
    for g in gens:
        h.update(str(g).encode())
    r.digest = {"stages": [{"name": "first", "steps": len(gens)}], "sha256": h.hexdigest()}
    if _is_v0(F):
        r.verdict = "v0; infinite level"
    return r


def _s_plus_1(prob: Problem):
    if prob.mode == "state":
        return level_s_plus_1(prob.field, N=prob.N)
    if prob.mode == "orbital":
        return orbital_s_plus_1(prob.field, N=prob.N)
    return parametric_s_plus_1(prob.model(), N=prob.N)


def classify_report(prob: Problem) -> Report:
    F, table = lvec_to_field(prob.field, prob.muNames)
    v = LVec(table, {b: c for (b, mu), c in F.items() if not any(mu)})
    s, _ = detect_s_p(v, prob.N)
    caveats = []
    if hasattr(s, "value"):
        res = _s_plus_1(prob)
        cl, level, caveats = res.classification, "s+1", list(res.caveats)
    else:
        cl, level = classify_output(v, prob.N), "first"
    r = _base(prob, "classify", level, cl, table)
    r.caveats = caveats + [c for c in unresolved_caveats(cl) if c not in caveats]
    return r


def normalize(prob: Problem):
    if prob.mode == "state":
        return infinite_level(prob.field, prob.N)
    if prob.mode == "orbital":
        return orbital_infinite(prob.field, prob.N)
    return parametric_infinite(prob.model(), prob.N)


def result_report(prob: Problem, res, command="normalize") -> Report:
    r = _base(prob, command, res.levelTag, res.classification, res.table)
    r.case = res.caseTag
    r.terms = [Term(s.basis.kind, s.basis.m, s.basis.n, tuple(s.mu), s.label, s.coeff) for s in res.survivors]
    r.digest = step_digest(res.stages)
    r.caveats = list(res.caveats)
    if _is_v0(res.terms):
        r.verdict = "v0; infinite level"
    return r


def run(spec: InputSpec, command, mode=None, N=None, M=None, subst=None) -> Report:
    prob = prepare(spec, mode, N, M, subst)
    if command == "first-level":
        return first_level_report(prob)
    if command == "classify":
        return classify_report(prob)
    if command == "normalize":
        return result_report(prob, normalize(prob))
    raise ValueError(f"unknown command {command!r}")
