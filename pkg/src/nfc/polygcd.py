"""Multivariate gcd over the Gaussian rationals.

Recursive scheme: view both inputs as univariate in one symbol with
coefficients in the remaining symbols, split off contents, and run the
subresultant remainder sequence on the primitive parts.  Symbols present in
only one argument are handled up front: the gcd must divide every coefficient
of that argument with respect to those symbols, which keeps the common case
(large numerator, small frequency-only denominator) cheap.
"""

from .poly import Poly


def _one(t):
    return Poly.one(t)


def poly_gcd(a, b):
    """Greatest common divisor, normalised to leading coefficient 1 (graded lex)."""
    if a.table != b.table:
        raise ValueError("polynomials over different symbol tables")
    return _gcd(a, b).monic()


def _gcd(a, b):
    t = a.table
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_const() or b.is_const():
        return _one(t)
    if a.is_monomial() or b.is_monomial():
        return _monomial_gcd(a, b)
    if a == b:
        return a
    va, vb = a.vars(), b.vars()
    only_a = va - vb
    only_b = vb - va
    if only_a:
        return _gcd_with_pieces(b, a.split_vars(only_a).values())
    if only_b:
        return _gcd_with_pieces(a, b.split_vars(only_b).values())
    x = _pick_var(a, b, va)
    A = a.to_univariate(x)
    B = b.to_univariate(x)
    ca = _content(A)
    cb = _content(B)
    c = _gcd(ca, cb)
    pa = {e: p.divexact(ca) for e, p in A.items()}
    pb = {e: p.divexact(cb) for e, p in B.items()}
    g = _prs_gcd(pa, pb, t)
    return Poly.from_univariate(t, g, x) * c


def _gcd_with_pieces(g, pieces):
    pieces = sorted(pieces, key=len)
    for p in pieces:
        g = _gcd(g, p)
        if g.is_const():
            return _one(g.table)
    return g


def _monomial_gcd(a, b):
    t = a.table
    if not a.is_monomial():
        a, b = b, a
    (ka,) = a.terms
    ea = t.unpack(ka)
    low = list(ea)
    for k in b.terms:
        eb = t.unpack(k)
        low = [min(x, y) for x, y in zip(low, eb)]
        if not any(low):
            return _one(t)
    return Poly.monomial(t, low)


def _pick_var(a, b, vs):
    return min(vs, key=lambda i: (max(a.degree_in(i), b.degree_in(i)), i))


def _content(U):
    ps = sorted(U.values(), key=len)
    g = ps[0]
    for p in ps[1:]:
        if g.is_const():
            break
        g = _gcd(g, p)
    if g.is_const():
        return _one(g.table)
    return g


def _deg(U):
    return max(U) if U else -1


def _lc(U):
    return U[max(U)]


def _prem(F, G, t):
    """Pseudo-remainder of univariate F by G (dict exponent -> Poly)."""
    dg = _deg(G)
    lg = _lc(G)
    R = dict(F)
    df = _deg(R)
    steps = df - dg + 1
    while R and _deg(R) >= dg:
        dr = _deg(R)
        lr = R[dr]
        shift = dr - dg
        newR = {}
        for e, p in R.items():
            if e == dr:
                continue
            newR[e] = p * lg
        for e, p in G.items():
            if e == dg:
                continue
            ee = e + shift
            v = newR.get(ee)
            term = p * lr
            newR[ee] = (v - term) if v is not None else -term
        R = {e: p for e, p in newR.items() if not p.is_zero()}
        steps -= 1
    if steps > 0 and R:
        f = lg ** steps
        R = {e: p * f for e, p in R.items()}
    return R


def _prs_gcd(F, G, t):
    if _deg(F) < _deg(G):
        F, G = G, F
    if not G:
        return F
    g = _one(t)
    h = _one(t)
    while True:
        d = _deg(F) - _deg(G)
        R = _prem(F, G, t)
        if not R:
            return _primitive(G)
        if _deg(R) == 0:
            return {0: _one(t)}
        div = g * (h ** d)
        F, G = G, {e: p.divexact(div) for e, p in R.items()}
        g = _lc(F)
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = (g ** d).divexact(h ** (d - 1))


def _primitive(U):
    c = _content(U)
    if c.is_const():
        return U
    return {e: p.divexact(c) for e, p in U.items()}


def poly_lcm(a, b):
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.table)
    g = poly_gcd(a, b)
    return (a.divexact(g) * b).monic()
