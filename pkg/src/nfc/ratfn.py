"""Reduced rational functions: the coefficient field of every computation."""

from .gauss import GaussRat, cinv
from .poly import Poly
from .polygcd import poly_gcd


class RatFn:
    """num/den with gcd(num, den) = 1 and den monic under graded lex.

    Equality is structural because the representative is unique.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canon=False):
        if den is None:
            den = Poly.one(num.table)
        if _canon:
            self.num, self.den = num, den
            return
        n, d = _canon_pair(num, den)
        self.num, self.den = n, d

    @property
    def table(self):
        return self.num.table

    @classmethod
    def zero(cls, table):
        return cls(Poly.zero(table), Poly.one(table), _canon=True)

    @classmethod
    def one(cls, table):
        return cls(Poly.one(table), Poly.one(table), _canon=True)

    @classmethod
    def const(cls, table, c):
        return cls(Poly.const(table, c), Poly.one(table), _canon=True)

    @classmethod
    def var(cls, table, name):
        return cls(Poly.var(table, name), Poly.one(table), _canon=True)

    @classmethod
    def from_poly(cls, p):
        return cls(p, Poly.one(p.table), _canon=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.den.is_const() and self.num == 1

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def is_poly(self):
        return self.den.is_const()

    def const_value(self):
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num.const_value()

    def _lift(self, o):
        if isinstance(o, RatFn):
            return o
        if isinstance(o, Poly):
            return RatFn.from_poly(o)
        return RatFn.const(self.table, o)

    def __add__(self, o):
        o = self._lift(o)
        a, b, c, d = self.num, self.den, o.num, o.den
        if a.is_zero():
            return o
        if c.is_zero():
            return self
        if b.is_const() and d.is_const():
            return RatFn(a + c, b, _canon=True)
        if b == d:
            n = a + c
            if n.is_zero():
                return RatFn.zero(self.table)
            g = poly_gcd(n, b)
            if g.is_const():
                return RatFn(n, b, _canon=True)
            return _finish(n.divexact(g), b.divexact(g))
        if b.is_const():
            return RatFn(a * d + c, d, _canon=True)
        if d.is_const():
            return RatFn(a + c * b, b, _canon=True)
        g = poly_gcd(b, d)
        if g.is_const():
            return RatFn(a * d + c * b, b * d, _canon=True)
        bg = b.divexact(g)
        dg = d.divexact(g)
        t = a * dg + c * bg
        if t.is_zero():
            return RatFn.zero(self.table)
        g2 = poly_gcd(t, g)
        if not g2.is_const():
            t = t.divexact(g2)
            g = g.divexact(g2)
        return _finish(t, bg * dg * g)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, _canon=True)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, RatFn):
            if isinstance(o, Poly):
                o = RatFn.from_poly(o)
            else:
                c = GaussRat.coerce(o)
                if c.is_zero():
                    return RatFn.zero(self.table)
                return RatFn(self.num.scale(c), self.den, _canon=True)
        a, b, c, d = self.num, self.den, o.num, o.den
        if a.is_zero() or c.is_zero():
            return RatFn.zero(self.table)
        if b.is_const() and d.is_const():
            return RatFn(a * c, b, _canon=True)
        g1 = poly_gcd(a, d)
        g2 = poly_gcd(c, b)
        if not g1.is_const():
            a = a.divexact(g1)
            d = d.divexact(g1)
        if not g2.is_const():
            c = c.divexact(g2)
            b = b.divexact(g2)
        return _finish(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return _finish(self.den, self.num)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFn(self.num ** e, self.den ** e, _canon=True)

    def __eq__(self, o):
        if isinstance(o, RatFn):
            return self.num == o.num and self.den == o.den
        try:
            o = self._lift(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def conj(self):
        return RatFn(self.num.conj(), self.den.conj())

    def is_real(self):
        return self.num.is_real() and self.den.is_real()

    def subs(self, values):
        n = self.num.subs(values)
        d = self.den.subs(values)
        if d.is_zero():
            raise ZeroDivisionError("denominator vanishes at the substituted point")
        return RatFn(n, d)

    def retable(self, table):
        return RatFn(self.num.retable(table), self.den.retable(table), _canon=True)

    def symbols(self):
        t = self.table
        return {t.names[i] for i in self.num.vars() | self.den.vars()}

    def __repr__(self):
        return f"RatFn({self})"

    def __str__(self):
        if self.den.is_const():
            return str(self.num)
        n = str(self.num)
        d = str(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"


def _finish(n, d):
    """Normalise an already coprime pair so the denominator is monic."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if n.is_zero():
        return RatFn(n, Poly.one(n.table), _canon=True)
    _, c = d.lead()
    if c[0] == 1 and not c[1]:
        return RatFn(n, d, _canon=True)
    inv = cinv(c)
    return RatFn(n.scale(inv), d.scale(inv), _canon=True)


def _canon_pair(num, den):
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return Poly.zero(num.table), Poly.one(num.table)
    if not den.is_const():
        g = poly_gcd(num, den)
        if not g.is_const():
            num = num.divexact(g)
            den = den.divexact(g)
    r = _finish(num, den)
    return r.num, r.den


def ratfn_canonicalize(num, den):
    """The unique reduced representative of num/den."""
    return RatFn(num, den)
