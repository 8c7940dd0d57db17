"""Polynomials and vector fields in the complex phase coordinates (z1, w1, z2, w2).

A PhasePoly is stored as one numerator polynomial over the phase symbols plus
the coefficient symbols, divided by a product of powers of monic polynomial
factors in the coefficient symbols.  The generators of the first-level loop
only ever divide by linear forms in the frequencies, so keeping the
denominator factored avoids every gcd until coefficients are read out.
"""

from functools import lru_cache

from gmpy2 import mpq

from .gauss import ONE, ZERO, cinv
from .poly import Poly, SymbolTable
from .ratfn import RatFn

PHASE = ("z1", "w1", "z2", "w2")
REAL = ("x1", "y1", "x2", "y2")
IPAIR = (ZERO, ONE)


@lru_cache(maxsize=None)
def phase_table(coeff_table):
    kinds = dict(zip(coeff_table.names, coeff_table.kinds))
    for nm in PHASE:
        kinds[nm] = "phase"
    return SymbolTable(PHASE + coeff_table.names, kinds)


class PhaseRing:
    """Shared context: coefficient table, phase table and the two frequencies."""

    def __init__(self, coeff_table, omega1="omega1", omega2="omega2"):
        self.ctable = coeff_table
        self.table = phase_table(coeff_table)
        self.omega = (self._lift(omega1), self._lift(omega2))
        self._shifts = self.table._shift[:4]
        self._fm = self.table.fieldmask

    def _lift(self, w):
        if isinstance(w, str):
            return Poly.var(self.table, w)
        if isinstance(w, Poly):
            return w.retable(self.table)
        return Poly.const(self.table, w)

    def phase_exps(self, key):
        fm = self._fm
        return tuple((key >> sh) & fm for sh in self._shifts)

    def phase_degree(self, key):
        fm = self._fm
        return sum((key >> sh) & fm for sh in self._shifts)

    def mono(self, exps):
        return self.table.pack(tuple(exps) + (0,) * self.ctable.n)

    def lift(self, c):
        """Coefficient (number, Poly or RatFn over the coefficient table) as a PhasePoly constant."""
        if isinstance(c, RatFn):
            return PhasePoly(self, c.num.retable(self.table), {}) * self.inv_poly(c.den)
        if isinstance(c, Poly):
            return PhasePoly(self, c.retable(self.table), {})
        return PhasePoly(self, Poly.const(self.table, c), {})

    def inv_poly(self, d):
        d = d.retable(self.table)
        if d.is_const():
            return PhasePoly(self, Poly.const(self.table, cinv(d.terms[0])), {})
        m = d.monic()
        lc = d.lead()[1]
        return PhasePoly(self, Poly.const(self.table, cinv(lc)), {m: 1})

    def zero(self):
        return PhasePoly(self, Poly.zero(self.table), {})

    def one(self):
        return PhasePoly(self, Poly.one(self.table), {})

    def var(self, name):
        return PhasePoly(self, Poly.var(self.table, name), {})

    def invariant(self, m, n):
        """(z1 w1)^m (z2 w2)^n."""
        return PhasePoly(self, Poly(self.table, {self.mono((m, m, n, n)): (ONE, ZERO)}), {})

    def rotation_factor(self, exps):
        """(i1-j1) w1 + (i2-j2) w2 for the monomial z1^i1 w1^j1 z2^i2 w2^j2."""
        i1, j1, i2, j2 = exps
        return self.omega[0].scale(i1 - j1) + self.omega[1].scale(i2 - j2)


class PhasePoly:
    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den):
        self.ring = ring
        self.num = num
        self.den = den  # {monic Poly: power}

    def is_zero(self):
        return self.num.is_zero()

    def _common(self, o):
        if self.den == o.den:
            return self.num, o.num, self.den
        den = dict(self.den)
        for f, e in o.den.items():
            if den.get(f, 0) < e:
                den[f] = e
        return self.num * _factor_prod(den, self.den), o.num * _factor_prod(den, o.den), den

    def __add__(self, o):
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        a, b, d = self._common(o)
        return PhasePoly(self.ring, a + b, d)

    def __sub__(self, o):
        if o.num.is_zero():
            return self
        a, b, d = self._common(o)
        return PhasePoly(self.ring, a - b, d)

    def __neg__(self):
        return PhasePoly(self.ring, -self.num, self.den)

    def __mul__(self, o):
        if not isinstance(o, PhasePoly):
            return PhasePoly(self.ring, self.num.scale(o), self.den)
        if self.num.is_zero() or o.num.is_zero():
            return self.ring.zero()
        den = dict(self.den)
        for f, e in o.den.items():
            den[f] = den.get(f, 0) + e
        return PhasePoly(self.ring, self.num * o.num, den)

    __rmul__ = __mul__

    def __pow__(self, e):
        r = self.ring.one()
        for _ in range(e):
            r = r * self
        return r

    def scale(self, c):
        return PhasePoly(self.ring, self.num.scale(c), self.den)

    def diff(self, name):
        """Partial derivative in a phase variable (the denominator is free of phase variables)."""
        return PhasePoly(self.ring, self.num.diff(name), self.den)

    def filter(self, pred):
        """Keep the terms whose phase exponents satisfy pred."""
        pe = self.ring.phase_exps
        return PhasePoly(self.ring, Poly(self.num.table, {k: c for k, c in self.num.terms.items() if pred(pe(k))}), self.den)

    def homogeneous(self, d):
        pd = self.ring.phase_degree
        return PhasePoly(self.ring, Poly(self.num.table, {k: c for k, c in self.num.terms.items() if pd(k) == d}), self.den)

    def truncate(self, d):
        pd = self.ring.phase_degree
        return PhasePoly(self.ring, Poly(self.num.table, {k: c for k, c in self.num.terms.items() if pd(k) <= d}), self.den)

    def max_degree(self):
        pd = self.ring.phase_degree
        return max((pd(k) for k in self.num.terms), default=-1)

    def mul_trunc(self, o, d):
        """Product with every term of phase degree above d dropped."""
        return (self * o).truncate(d)

    def rotate(self):
        """Derivative along the linear rotation field v0."""
        ring = self.ring
        by_phase = self.num.split_vars(range(4))
        out = Poly.zero(self.num.table)
        for exps, c in by_phase.items():
            L = ring.rotation_factor(exps)
            if L.is_zero():
                continue
            out = out + (c * L).scale(IPAIR).mul_monomial(ring.mono(exps))
        return PhasePoly(ring, out, self.den)

    def coeffs(self):
        """{(i1, j1, i2, j2): RatFn over the coefficient table}, reduced."""
        ring = self.ring
        out = {}
        for exps, c in self.num.split_vars(range(4)).items():
            out[exps] = _reduce(ring, c, self.den)
        return out

    def coeff(self, exps):
        key = self.ring.mono(exps)
        sub = {}
        pe = self.ring.phase_exps
        exps = tuple(exps)
        for k, c in self.num.terms.items():
            if pe(k) == exps:
                sub[k - key] = c
        return _reduce(self.ring, Poly(self.num.table, sub), self.den)

    def phase_support(self):
        pe = self.ring.phase_exps
        return {pe(k) for k in self.num.terms}

    def equals(self, o):
        return (self - o).num.is_zero()

    def subs(self, values):
        """Substitute coefficient symbols by numbers; result reduced over the same ring."""
        num = self.num.subs(values)
        r = PhasePoly(self.ring, num, {})
        for f, e in self.den.items():
            fv = f.subs(values)
            if fv.is_zero():
                raise ZeroDivisionError("denominator factor vanishes at the substituted point")
            r = r * (self.ring.inv_poly(fv) ** e)
        return r

    def __str__(self):
        parts = []
        for exps, c in sorted(self.coeffs().items(), reverse=True):
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(PHASE, exps) if e)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"


def _factor_prod(target, have):
    p = None
    for f, e in target.items():
        extra = e - have.get(f, 0)
        for _ in range(extra):
            p = f if p is None else p * f
    if p is None:
        return Poly.one(next(iter(target)).table)
    return p


def _reduce(ring, c, den):
    """c / prod(den) as a canonical RatFn over the coefficient table."""
    ct = ring.ctable
    if c.is_zero():
        return RatFn.zero(ct)
    dprod = Poly.one(c.table)
    for f, e in den.items():
        for _ in range(e):
            try:
                c = c.divexact(f)
            except ArithmeticError:
                dprod = dprod * f
    num = c.retable(ct)
    d = dprod.retable(ct)
    # factors are distinct monic irreducibles, so what is left is coprime
    if all(_is_linear(f) for f in den):
        return RatFn(num, d, _canon=True)
    return RatFn(num, d)


def _is_linear(f):
    return f.total_degree() <= 1


def real_to_complex(ring, f):
    """Substitute x = (z+w)/2, y = (z-w)/(2I) into a polynomial in x1,y1,x2,y2.

    f is a Poly over a table containing x1..y2 and coefficient symbols."""
    t = ring.table
    h = mpq(1, 2)
    z1, w1, z2, w2 = (Poly.var(t, nm) for nm in PHASE)
    xs = [(z1 + w1).scale((h, ZERO)), (z1 - w1).scale((ZERO, -h)),
          (z2 + w2).scale((h, ZERO)), (z2 - w2).scale((ZERO, -h))]
    src = f.table
    powcache = {}

    def pw(i, e):
        if (i, e) not in powcache:
            powcache[(i, e)] = xs[i] ** e
        return powcache[(i, e)]

    acc = Poly.zero(t)
    for k, c in f.terms.items():
        exps = src.unpack(k)
        rest = [0] * t.n
        term = None
        for j, nm in enumerate(src.names):
            e = exps[j]
            if not e:
                continue
            if nm in REAL:
                p = pw(REAL.index(nm), e)
                term = p if term is None else term * p
            else:
                rest[t.index[nm]] = e
        base = Poly(t, {t.pack(rest): c})
        acc = acc + (base if term is None else base * term)
    return PhasePoly(ring, acc, {})


class PhaseField:
    """A vector field sum_i P_i d/d(phase_i) with PhasePoly components."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring, comps):
        self.ring = ring
        self.comps = tuple(comps)

    @classmethod
    def zero(cls, ring):
        z = ring.zero()
        return cls(ring, (z, z, z, z))

    def __add__(self, o):
        return PhaseField(self.ring, [a + b for a, b in zip(self.comps, o.comps)])

    def __sub__(self, o):
        return PhaseField(self.ring, [a - b for a, b in zip(self.comps, o.comps)])

    def scale(self, c):
        return PhaseField(self.ring, [a.scale(c) for a in self.comps])

    def times(self, g):
        """Multiplication by a scalar PhasePoly (time rescaling)."""
        return PhaseField(self.ring, [a * g for a in self.comps])

    def is_zero(self):
        return all(a.is_zero() for a in self.comps)

    def apply(self, g):
        """Directional derivative X(g) of a scalar PhasePoly."""
        acc = self.ring.zero()
        for nm, a in zip(PHASE, self.comps):
            if a.is_zero():
                continue
            dg = g.diff(nm)
            if not dg.is_zero():
                acc = acc + a * dg
        return acc

    def truncate(self, d):
        return PhaseField(self.ring, [a.truncate(d) for a in self.comps])

    def equals(self, o):
        return all(a.equals(b) for a, b in zip(self.comps, o.comps))


def field_bracket(X, Y, maxdeg=None):
    """[X, Y] with components Y(X^i) - X(Y^i)."""
    comps = []
    for xi, yi in zip(X.comps, Y.comps):
        c = Y.apply(xi) - X.apply(yi)
        if maxdeg is not None:
            c = c.truncate(maxdeg)
        comps.append(c)
    return PhaseField(X.ring, comps)


def euler_field(ring, g):
    """g times z1 d/dz1 + w1 d/dw1 + z2 d/dz2 + w2 d/dw2."""
    return PhaseField(ring, [g * ring.var(nm) for nm in PHASE])


def rotation_field(ring, g, i):
    """g times I(z_i d/dz_i - w_i d/dw_i)."""
    z = ring.zero()
    comps = [z, z, z, z]
    a = 0 if i == 1 else 2
    comps[a] = (g * ring.var(PHASE[a])).scale(IPAIR)
    comps[a + 1] = (g * ring.var(PHASE[a + 1])).scale((ZERO, -ONE))
    return PhaseField(ring, comps)


def exp_rho(T, S, v, weight, cutoff, max_terms=64):
    """exp(rho)(v) with rho(x) = T*x + [S, x], truncated by a weight function.

    weight(PhaseField) returns the lowest weight present; terms whose weight
    exceeds cutoff are dropped at every step, so the series terminates when
    T and S only raise the weight."""
    total = v
    term = v
    for n in range(1, max_terms):
        nxt = field_bracket(S, term) if S is not None else PhaseField.zero(v.ring)
        if T is not None:
            nxt = nxt + term.times(T)
        nxt = weight(nxt, cutoff)
        if nxt.is_zero():
            return total
        term = nxt.scale((mpq(1, n), ZERO))
        total = total + term
    raise RuntimeError("exponential series did not terminate")
