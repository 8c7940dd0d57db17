"""Parametric hypernormalization: coefficients are polynomials in parameters mu.

Parameters ride along as monomials mu^m attached to every term, truncated at
|m| <= M.  A term mu^m X has grade grade(X) + w |m| with a stage dependent
weight w (s+1 at the s+1 level, r+1 afterwards), and E_{0,0} mu^m with
|m| >= 1 joins the state generators.  Every level freezes its pivot
coefficient to its value at mu = 0.
"""

from dataclasses import dataclass

from .classification import (Classification, Finite, PivotError, detect_r_q, detect_s_p, detect_si_pi,
                             gate_expression)
from .engine import Setting, lvec_to_field
from .first_level import first_level
from .levels import (Stage, build_result, classify_output, max_degree, reclassify, require_pivot, run_pipeline,
                     unresolved_caveats)
from .lie import BasisElem, Grading, LVec
from .state import _extend, _finite


@dataclass
class ParamLVec:
    """First-level field whose coefficients may contain the parameter symbols."""
    field: LVec
    muNames: tuple
    M: int

    def degree(self):
        return max_degree(self.field)


def parametric_first_level(ring, f, n, M, mu_names):
    out = first_level(ring, f, n, mu_names=tuple(mu_names), M=M)
    return ParamLVec(out.normalForm, tuple(mu_names), M)


def as_param(v, mu_names=(), M=0):
    return v if isinstance(v, ParamLVec) else ParamLVec(v, tuple(mu_names), M)


def _setting(offset, weight, cap, N, w: ParamLVec):
    return Setting(Grading(offset, weight), cap, N, M=w.M, nmu=len(w.muNames), time=True, mu_euler=True)


def _fields(w: ParamLVec):
    F, table = lvec_to_field(w.field, w.muNames)
    F = {k: c for k, c in F.items() if sum(k[1]) <= w.M}
    return F, table


def _slice0(F, table):
    return LVec(table, {b: c for (b, mu), c in F.items() if not any(mu)})


def _run(w, F, table, stages, N, cl, caseTag=""):
    F, labels = run_pipeline(F, table, stages)
    return build_result(F, table, stages, labels, "parametric", N, w.M, w.muNames, cl, caseTag,
                        unresolved_caveats(cl))


def parametric_s_plus_1(w, s=None, p=None, N=None, M=None, mu_names=()):
    w = as_param(w, mu_names, M or 0)
    N = w.degree() if N is None else N
    F, table = _fields(w)
    v = _slice0(F, table)
    if s is None:
        s, p = detect_s_p(v, N)
        if not _finite(s):
            raise ValueError(f"no Eulerian terms at zero parameters up to degree {N}; the s+1 level needs a finite s")
        s, p = s.value, p.value
    require_pivot(v, s - p, p)
    stage = Stage("s+1", _setting(s, s + 1, s + 1, N, w), level=s + 1)
    res = _run(w, F, table, [stage], N, Classification(Finite(s), Finite(p)))
    return reclassify(res, N)


def parametric_r_plus_1(res, r=None, q=None, N=None, M=None):
    v = res.mu_free()
    s = res.classification.s.value
    if r is None:
        r, q = detect_r_q(v, s, res.N)
        if not _finite(r):
            raise ValueError(f"no Eulerian row above grade {s} at zero parameters up to degree {res.N}")
        r, q = r.value, q.value
    require_pivot(v, r - q, q)
    w = ParamLVec(None, res.muNames, res.M)
    stage = Stage("r+1", _setting(r + s, r + 1, r + 1, res.N, w), level=r + 1)
    out = _extend(res, stage)
    if out.classification.alpha == r + s + 1:
        out.caseTag = "full-rank"
    return out


def second_level_coefficient(b10, b01, b11, b20, b02):
    """(basis, value) of the grade-2 Eulerian coefficient left by the s+1 level when s = 1.

    With b10 != 0 the survivor is E_{0,2}, otherwise E_{2,0} (needs b01 != 0)."""
    g = gate_expression(b10, b01, b11, b20, b02)
    if not b10.is_zero():
        return BasisElem("E", 0, 2), g / (b10 * b10)
    if b01.is_zero():
        raise PivotError("pivot coefficient b_{0,1} vanishes")
    return BasisElem("E", 2, 0), g / (b01 * b01)


def parametric_infinite(w, N=None, M=None, mu_names=()):
    w = as_param(w, mu_names, M or 0)
    N = w.degree() if N is None else N
    F, table = _fields(w)
    v = _slice0(F, table)
    s, p = detect_s_p(v, N)
    if _finite(s):
        res = parametric_s_plus_1(w, s.value, p.value, N)
        cl = res.classification
        if not _finite(cl.r):
            res.caseTag = "r-unresolved"
            res.levelTag = "infinite"
            return res
        r = cl.r.value
        res = parametric_r_plus_1(res, r, cl.q.value)
        stage = Stage("infinite", _setting(r + s.value, r + 1, None, N, w), level="inf")
        if s.value == 1 and r == 2 and cl.genericGate:
            tag = "s1r2-b10" if p.value == 0 else "s1r2-b01"
        else:
            tag = "full-rank" if cl.alpha == r + s.value + 1 else "rank-deficient"
        return _extend(res, stage, caseTag=tag)
    # no Eulerian terms at zero parameters: Theta^1 is graded one below Theta^2
    cl = classify_output(v, N, s, p)
    first = Stage("s2+1", _setting((0, 1), 1, None, N, w), level=2)
    F1, labels = run_pipeline(F, table, [first])
    s2, p2 = detect_si_pi(_slice0(F1, table), 2, N)
    cl.s2, cl.p2 = s2, p2
    if not _finite(s2):
        res = build_result(F1, table, [first], labels, "parametric", N, w.M, w.muNames, cl, "linearizable",
                           unresolved_caveats(cl) + [f"zero-parameter part linearizable up to degree {N}"])
        res.levelTag = "infinite"
        return res
    second = Stage("infinite", _setting(0, s2.value + 1, None, N, w), level="inf")
    F2, more = run_pipeline(F1, table, [second])
    labels.update(more)
    return build_result(F2, table, [first, second], labels, "parametric", N, w.M, w.muNames, cl, "theta2-row",
                        unresolved_caveats(cl))
