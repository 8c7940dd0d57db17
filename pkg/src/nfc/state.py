"""Hypernormalization by changes of state variables only.

Levels are run by the graded engine with generators from [L, L]:
the s+1 level (cap s+1, Theta offset s), the r+1 level (cap r+1) and the
infinite level (no cap).  The infinite-level driver dispatches on the
detected invariants.
"""

from .classification import Classification, Finite, detect_r_q, detect_s_p
from .engine import Setting
from .levels import (Stage, build_result, classify_output, field_of, max_degree, reclassify, require_pivot,
                     run_pipeline, unresolved_caveats)
from .lie import BasisElem, Grading, LVec, bracket


def _finite(x):
    return isinstance(x, Finite)


def _setting(offset, cap, N, **kw):
    return Setting(Grading(offset, 0), cap, N, **kw)


def _extend(res, stage, classification=None, caseTag=None):
    F, labels = run_pipeline(dict(res.raw), res.table, [stage])
    merged = dict(res.labels)
    merged.update(labels)
    out = build_result(F, res.table, res.stages + [stage], merged, res.mode, res.N, res.M, res.muNames,
                       classification or res.classification, caseTag or res.caseTag, res.caveats)
    return out


def _start(v1: LVec, stage, mode, N, cl, caseTag=""):
    F, table = field_of(v1)
    F, labels = run_pipeline(F, table, [stage])
    res = build_result(F, table, [stage], labels, mode, N, cl=cl, caseTag=caseTag,
                       caveats=unresolved_caveats(cl))
    return res


def _sp(v1, s, p, N):
    if s is None:
        s, p = detect_s_p(v1, N)
        if not _finite(s):
            raise ValueError(f"no Eulerian terms up to degree {N}; the s+1 level needs a finite s")
        s, p = s.value, p.value
    require_pivot(v1, s - p, p)
    return s, p


def level_s_plus_1(v1: LVec, s=None, p=None, N=None, offset=None):
    N = max_degree(v1) if N is None else N
    s, p = _sp(v1, s, p, N)
    stage = Stage("s+1", _setting(s if offset is None else offset, s + 1, N), level=s + 1)
    res = _start(v1, stage, "state", N, Classification(Finite(s), Finite(p)))
    return reclassify(res, N)


def _rq(res, r, q):
    v = res.mu_free()
    s = res.classification.s.value
    if r is None:
        r, q = detect_r_q(v, s, res.N)
        if not _finite(r):
            raise ValueError(f"no Eulerian row above grade {s} up to degree {res.N}; the r+1 level needs a finite r")
        r, q = r.value, q.value
    require_pivot(v, r - q, q)
    return s, r, q


def level_r_plus_1(res, r=None, q=None, N=None, offset=None):
    """r+1 level on top of an s+1 level result.  Theta offset defaults to r."""
    s, r, q = _rq(res, r, q)
    stage = Stage("r+1", _setting(r if offset is None else offset, r + 1, res.N), level=r + 1)
    out = _extend(res, stage)
    cl = out.classification
    if cl.alpha is not None and cl.alpha == r + s + 1:
        out.caseTag = "full-rank"
    return out


def infinite_level(v1: LVec, N=None):
    N = max_degree(v1) if N is None else N
    s, p = detect_s_p(v1, N)
    if _finite(s):
        res = level_s_plus_1(v1, s.value, p.value, N)
        cl = res.classification
        if _finite(cl.r):
            res = level_r_plus_1(res, cl.r.value, cl.q.value)
            stage = Stage("infinite", _setting(cl.r.value, None, N), level="inf")
            tag = "full-rank" if cl.alpha == cl.r.value + s.value + 1 else "rank-deficient"
            return _extend(res, stage, caseTag=tag)
        stage = Stage("infinite", _setting(s.value, None, N), level="inf")
        return _extend(res, stage, caseTag="r-unresolved")
    cl = classify_output(v1, N, s, p)
    if not (_finite(cl.s1) or _finite(cl.s2)):
        stage = Stage("infinite", _setting(0, None, N), level="inf")
        return _start(v1, stage, "state", N, cl, caseTag="linear")
    tag = "theta1-row" if _finite(cl.s1) else "theta2-row"
    stage = Stage("infinite", _setting(0, None, N), level="inf")
    return _start(v1, stage, "state", N, cl, caseTag=tag)


def _degree_cut(v: LVec, N):
    return v.filter(lambda b: b.m + b.n <= N)


def symmetry_generators(vinf):
    """Nonlinear generators whose bracket with the infinite-level field vanishes up to degree N."""
    v = vinf.mu_free()
    N = vinf.N
    cl = vinf.classification
    cands = []
    if vinf.caseTag == "r-unresolved":
        theta = [b for b in v.support() if b.kind != "E" and b.m + b.n >= 1]
        if not theta:
            s = cl.s.value
            cands = [BasisElem("E", s - j, j) for j in range(s + 1)]
    elif vinf.caseTag in ("theta1-row", "theta2-row", "linear"):
        cands = [BasisElem(k, d - j, j) for d in range(1, N + 1) for j in range(d + 1) for k in ("T1", "T2")]
    out = []
    for b in cands:
        g = LVec.single(v.table, b)
        if _degree_cut(bracket(g, v), N).is_zero():
            out.append(g)
    return out
