"""Gaussian rationals: exact numbers a + b*I with I**2 = -1."""

from fractions import Fraction

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


def to_rat(x):
    """Coerce ints, Fractions, strings like '3/4' and mpq to mpq."""
    if isinstance(x, str):
        x = Fraction(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def rat_str(q):
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussRat:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_rat(re)
        self.im = to_rat(im)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x, 0)

    def pair(self):
        return (self.re, self.im)

    def is_zero(self):
        return not self.re and not self.im

    def conj(self):
        return GaussRat(self.re, -self.im)

    def __add__(self, o):
        o = GaussRat.coerce(o)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, o):
        o = GaussRat.coerce(o)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussRat.coerce(o) - self

    def __mul__(self, o):
        o = GaussRat.coerce(o)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * GaussRat.coerce(o).inverse()

    def __rtruediv__(self, o):
        return GaussRat.coerce(o) * self.inverse()

    def __eq__(self, o):
        try:
            o = GaussRat.coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({rat_str(self.re)}, {rat_str(self.im)})"

    def __str__(self):
        if not self.im:
            return rat_str(self.re)
        if not self.re:
            return f"{rat_str(self.im)}*I"
        return f"({rat_str(self.re)} + {rat_str(self.im)}*I)"


I = GaussRat(0, 1)


# Pair helpers used in the polynomial hot loops. A coefficient is a tuple (re, im).

def cmul(a, b):
    ar, ai = a
    br, bi = b
    if not ai and not bi:
        return (ar * br, ZERO)
    return (ar * br - ai * bi, ar * bi + ai * br)


def cinv(a):
    ar, ai = a
    if not ai:
        return (ONE / ar, ZERO)
    n = ar * ar + ai * ai
    return (ar / n, -ai / n)
