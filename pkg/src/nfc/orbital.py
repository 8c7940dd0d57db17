"""Orbital hypernormalization: state changes joined with near-identity time rescaling.

Time factors Z_{m,n} act on a field by multiplication.  The s+1 level uses
Theta offset s; the r+1 and infinite levels use offset r+s.  Without a
second Eulerian row the driver stops using time rescaling after the s+1
level and finishes with state generators only.
"""

from .classification import Classification, Finite, detect_s_p
from .engine import Setting
from .levels import Stage, classify_output, max_degree, reclassify
from .lie import Grading, LVec
from .state import _extend, _finite, _rq, _sp, _start


def _setting(offset, cap, N, time=True):
    return Setting(Grading(offset, 0), cap, N, time=time)


def orbital_s_plus_1(v1: LVec, s=None, p=None, N=None):
    N = max_degree(v1) if N is None else N
    s, p = _sp(v1, s, p, N)
    stage = Stage("s+1", _setting(s, s + 1, N), level=s + 1)
    res = _start(v1, stage, "orbital", N, Classification(Finite(s), Finite(p)))
    return reclassify(res, N)


def orbital_r_plus_1(res, r=None, q=None, N=None):
    s, r, q = _rq(res, r, q)
    stage = Stage("r+1", _setting(r + s, r + 1, res.N), level=r + 1)
    out = _extend(res, stage)
    if out.classification.alpha == r + s + 1:
        out.caseTag = "full-rank"
    return out


def orbital_infinite(v1: LVec, N=None):
    N = max_degree(v1) if N is None else N
    s, p = detect_s_p(v1, N)
    if _finite(s):
        res = orbital_s_plus_1(v1, s.value, p.value, N)
        cl = res.classification
        if _finite(cl.r):
            r = cl.r.value
            res = orbital_r_plus_1(res, r, cl.q.value)
            stage = Stage("infinite", _setting(r + s.value, None, N), level="inf")
            tag = "full-rank" if cl.alpha == r + s.value + 1 else "rank-deficient"
            return _extend(res, stage, caseTag=tag)
        stage = Stage("infinite", _setting(s.value, None, N, time=False), level="inf")
        out = _extend(res, stage, caseTag="r-unresolved")
        out.caveats.append("time rescaling is not used beyond the s+1 level in this case")
        return out
    cl = classify_output(v1, N, s, p)
    tag = "theta2-row" if _finite(cl.s2) else "linear"
    stage = Stage("infinite", _setting(0, None, N), level="inf")
    out = _start(v1, stage, "orbital", N, cl, caseTag=tag)
    # time rescaling removes every Theta1 term, so the Theta invariants are read off the result
    v = out.mu_free()
    out.classification = classify_output(v, N, s, p)
    return out
