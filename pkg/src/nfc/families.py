"""Closed-form survivor families for the s = 1, r = 2 normal forms.

A family is a predicate on (BasisElem, mu) keys.  compare_support checks
a result's support against a family over the grades the result actually
processed, which is the only region where a finite run can decide anything.
"""

from .engine import mu_monomials
from .lie import KINDS, BasisElem

# The families below are generic descriptions; coefficients that vanish by
# accident on a particular instance show up as "missing".


def _deg(b):
    return b.m + b.n


def _v0(b, mu):
    return b.kind != "E" and _deg(b) == 0 and not any(mu)


def state_inf(b, mu):
    """b_{1,0} != 0 and generic gate, state changes only."""
    if _v0(b, mu) or (b.kind != "E" and _deg(b) == 1):
        return True
    if b.kind == "E":
        return 1 <= _deg(b) <= 2 or (b.m == 0 and b.n >= 4)
    return b.m == 0 and b.n >= 2


def state_inf3_printed(b, mu):
    """b_{1,0} = 0, b_{0,1} != 0 as printed, with no degree-2 Eulerian survivor."""
    if _v0(b, mu) or (b.kind != "E" and _deg(b) == 1):
        return True
    if b.kind == "E":
        return (b.m, b.n) == (0, 1) or (b.n == 0 and b.m >= 4)
    return b.n == 0 and b.m >= 2


def state_inf3(b, mu):
    """b_{1,0} = 0, b_{0,1} != 0 with the degree-2 Eulerian row kept, as the first-level row is final."""
    if b.kind == "E" and _deg(b) == 2:
        return True
    return state_inf3_printed(b, mu)


def orbital_third_level(b, mu):
    """Orbital, b_{1,0} = 0, b_{0,1} b_{2,0} != 0, as printed."""
    if _v0(b, mu) or (b.kind != "E" and _deg(b) == 1):
        return True
    if b.kind == "E":
        return (b.m, b.n) in ((0, 1), (2, 0))
    return b.kind == "T1" and b.n == 0 and b.m >= 2


def orbital_third_level_both(b, mu):
    """Same case with the Theta^2 row j >= 2 kept alongside Theta^1."""
    if b.kind == "T2" and b.n == 0 and b.m >= 2:
        return True
    return orbital_third_level(b, mu)


def _param(row, theta1_tail=False):
    """Parametric s = 1, r = 2 family; row 0 when b_{1,0}(0) != 0 (tail along E_{0,j}), 1 otherwise.

    theta1_tail keeps Theta^1 on the same tail and Theta^1_{0,0} mu^m."""
    def tail(b):
        return (b.m == 0) if row == 0 else (b.n == 0)

    pivot = (1, 0) if row == 0 else (0, 1)
    grade2 = (0, 2) if row == 0 else (2, 0)

    def pred(b, mu):
        free = not any(mu)
        if _v0(b, mu):
            return True
        if b.kind == "T1":
            if theta1_tail and (_deg(b) == 0 or tail(b)):
                return True
            return _deg(b) == 1
        if b.kind == "T2":
            return _deg(b) <= 1 or (tail(b) and _deg(b) >= 2)
        d = _deg(b)
        if d == 0:
            return not free
        if d == 1:
            if (b.m, b.n) == pivot:
                return free
            return True if row == 0 else not free  # b_{1,0}(0) = 0 in the second case
        return d == 2 and (b.m, b.n) == grade2 and free
    return pred


param_case1 = _param(0)
param_case2 = _param(1)
param_case1_theta1 = _param(0, True)
param_case2_theta1 = _param(1, True)


FAMILIES = {
    "state-inf": state_inf,
    "state-inf3-printed": state_inf3_printed,
    "state-inf3": state_inf3,
    "orbital-third": orbital_third_level,
    "orbital-third-both": orbital_third_level_both,
    "param-case1": param_case1,
    "param-case2": param_case2,
    "param-case1-theta1": param_case1_theta1,
    "param-case2-theta1": param_case2_theta1,
}


def processed_keys(res):
    """Every tracked key in the grades the last stage completed."""
    st = res.setting
    K = st.last_grade()
    out = set()
    for mu in mu_monomials(st.nmu, st.M):
        for d in range(st.N + 1):
            for n in range(d + 1):
                for kind in KINDS:
                    key = (BasisElem(kind, d - n, n), mu)
                    if st.grade(key) <= K:
                        out.add(key)
    return out


def compare_support(res, family):
    """(equal, missing, extra) between the result's support and the family."""
    pred = FAMILIES[family] if isinstance(family, str) else family
    expected = {k for k in processed_keys(res) if pred(*k)}
    actual = res.support()
    return expected == actual, expected - actual, actual - expected
