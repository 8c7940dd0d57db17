"""The Lie algebra spanned by Eulerian terms E_{m,n} and rotational terms
Theta^1_{m,n}, Theta^2_{m,n}, with the rescaling ring spanned by Z_{m,n}.

Basis elements stand for
  E_{m,n}      = (x1^2+y1^2)^m (x2^2+y2^2)^n (x1 d/dx1 + y1 d/dy1 + x2 d/dx2 + y2 d/dy2)
  Theta^i_{m,n} = (x1^2+y1^2)^m (x2^2+y2^2)^n (-y_i d/dx_i + x_i d/dy_i)
  Z_{m,n}      = (x1^2+y1^2)^m (x2^2+y2^2)^n   (scalar time factor)
"""

from dataclasses import dataclass
from typing import NamedTuple

from .ratfn import RatFn

KINDS = ("E", "T1", "T2")
_KIND_RANK = {"E": 0, "T1": 1, "T2": 2}


class BasisElem(NamedTuple):
    kind: str
    m: int
    n: int

    @property
    def is_euler(self) -> bool:
        return self.kind == "E"

    def shift(self, m, n):
        return BasisElem(self.kind, self.m + m, self.n + n)

    def degree(self) -> int:
        return self.m + self.n

    def __str__(self):
        name = {"E": "E", "T1": "Theta1", "T2": "Theta2"}[self.kind]
        return f"{name}_{{{self.m},{self.n}}}"


def E(m, n):
    return BasisElem("E", m, n)


def T1(m, n):
    return BasisElem("T1", m, n)


def T2(m, n):
    return BasisElem("T2", m, n)


def Theta(i, m, n):
    return BasisElem("T1" if i == 1 else "T2", m, n)


@dataclass(frozen=True)
class Grading:
    """delta(E_{m,n}) = m+n, delta(Theta_{m,n}) = thetaOffset+m+n, plus muWeight per parameter degree."""
    thetaOffset: object = 0   # int, or a pair (Theta1 offset, Theta2 offset)
    muWeight: int = 0

    def offset(self, kind: str) -> int:
        if kind == "E":
            return 0
        if isinstance(self.thetaOffset, tuple):
            return self.thetaOffset[0 if kind == "T1" else 1]
        return self.thetaOffset

    def grade(self, b: BasisElem, mu_degree: int = 0) -> int:
        return b.m + b.n + self.offset(b.kind) + self.muWeight * mu_degree


def grade_of(b: BasisElem, g: Grading, muDegree: int = 0) -> int:
    return g.grade(b, muDegree)


class LVec:
    """Sparse element of the algebra: {BasisElem: RatFn}, zero coefficients never stored."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms=None):
        self.table = table
        self.terms = {}
        if terms:
            for b, c in terms.items():
                if not isinstance(c, RatFn):
                    c = RatFn.const(table, c) if not hasattr(c, "terms") else RatFn.from_poly(c)
                if not c.is_zero():
                    self.terms[b] = c

    @classmethod
    def _raw(cls, table, terms):
        v = cls.__new__(cls)
        v.table = table
        v.terms = terms
        return v

    @classmethod
    def zero(cls, table):
        return cls._raw(table, {})

    @classmethod
    def single(cls, table, b, c=1):
        return cls(table, {b: c})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def get(self, b):
        c = self.terms.get(b)
        return c if c is not None else RatFn.zero(self.table)

    def __getitem__(self, b):
        return self.get(b)

    def support(self):
        return set(self.terms)

    def __add__(self, o):
        r = dict(self.terms)
        for b, c in o.terms.items():
            v = r.get(b)
            if v is None:
                r[b] = c
            else:
                s = v + c
                if s.is_zero():
                    del r[b]
                else:
                    r[b] = s
        return LVec._raw(self.table, r)

    def __neg__(self):
        return LVec._raw(self.table, {b: -c for b, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        if not isinstance(c, RatFn):
            c = RatFn.const(self.table, c)
        if c.is_zero():
            return LVec.zero(self.table)
        return LVec._raw(self.table, {b: x * c for b, x in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, LVec) and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_coeffs(self, fn):
        r = {}
        for b, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                r[b] = v
        return LVec._raw(self.table, r)

    def subs(self, values):
        return self.map_coeffs(lambda c: c.subs(values))

    def filter(self, pred):
        return LVec._raw(self.table, {b: c for b, c in self.terms.items() if pred(b)})

    def truncate(self, N, g: Grading):
        return self.filter(lambda b: g.grade(b) <= N)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda bc: (bc[0].m + bc[0].n, _KIND_RANK[bc[0].kind], bc[0].n))

    def __repr__(self):
        return f"LVec({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{b}" for b, c in self.sorted_items())


def bracket_basis(a: BasisElem, b: BasisElem):
    """[a, b] as (scalar, BasisElem) or None when it vanishes."""
    if a.kind != "E" and b.kind != "E":
        return None
    m, n = a.m + b.m, a.n + b.n
    if a.kind == "E" and b.kind == "E":
        s = 2 * (a.m + a.n - b.m - b.n)
        return (s, BasisElem("E", m, n)) if s else None
    if a.kind != "E":
        s = 2 * (a.m + a.n)
        return (s, BasisElem(a.kind, m, n)) if s else None
    s = -2 * (b.m + b.n)
    return (s, BasisElem(b.kind, m, n)) if s else None


def bracket(u: LVec, w: LVec) -> LVec:
    acc = {}
    for a, ca in u.terms.items():
        for b, cb in w.terms.items():
            r = bracket_basis(a, b)
            if r is None:
                continue
            s, e = r
            c = ca * cb * s
            v = acc.get(e)
            acc[e] = c if v is None else v + c
    return LVec._raw(u.table, {b: c for b, c in acc.items() if not c.is_zero()})


class TimeGen:
    """Sum of c_{m,n} Z_{m,n}; an element of the rescaling ring."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms=None):
        self.table = table
        self.terms = {}
        for mn, c in (terms or {}).items():
            if not isinstance(c, RatFn):
                c = RatFn.const(table, c)
            if not c.is_zero():
                self.terms[tuple(mn)] = c

    @classmethod
    def zero(cls, table):
        return cls(table)

    def is_zero(self):
        return not self.terms

    def __add__(self, o):
        r = dict(self.terms)
        for k, c in o.terms.items():
            r[k] = r[k] + c if k in r else c
        return TimeGen(self.table, r)

    def __mul__(self, o):
        if not isinstance(o, TimeGen):
            return TimeGen(self.table, {k: c * o for k, c in self.terms.items()})
        r = {}
        for (a, b), c in self.terms.items():
            for (x, y), d in o.terms.items():
                k = (a + x, b + y)
                r[k] = r[k] + c * d if k in r else c * d
        return TimeGen(self.table, r)

    def __eq__(self, o):
        return isinstance(o, TimeGen) and self.terms == o.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*Z_{{{m},{n}}}" for (m, n), c in sorted(self.terms.items()))


def rescale_action(T: TimeGen, v: LVec) -> LVec:
    acc = {}
    for (m, n), c in T.terms.items():
        for b, cb in v.terms.items():
            e = b.shift(m, n)
            x = c * cb
            acc[e] = acc[e] + x if e in acc else x
    return LVec._raw(v.table, {b: c for b, c in acc.items() if not c.is_zero()})


def combined_action(T, S, v: LVec) -> LVec:
    """(T, S) * v = T v + [S, v]; either part may be None."""
    out = LVec.zero(v.table)
    if T is not None and not T.is_zero():
        out = out + rescale_action(T, v)
    if S is not None and not S.is_zero():
        out = out + bracket(S, v)
    return out


def project_radical(v: LVec) -> LVec:
    return v.filter(lambda b: b.kind != "E")


def project_quotient(v: LVec) -> LVec:
    return v.filter(lambda b: b.kind == "E")


def graded_part(v: LVec, k: int, g: Grading) -> LVec:
    return v.filter(lambda b: g.grade(b) == k)


def term_order_key(b: BasisElem, g: Grading, mu=()):
    """Elimination priority: lower grade first, then E before Theta1 before Theta2,
    then smaller parameter degree, then ascending second index."""
    d = sum(mu)
    return (g.grade(b, d), _KIND_RANK[b.kind], d, b.n, tuple(mu))


def v0(table, omega1="omega1", omega2="omega2") -> LVec:
    from .poly import Poly
    def lift(w):
        if isinstance(w, str):
            return RatFn.var(table, w)
        if isinstance(w, RatFn):
            return w
        if isinstance(w, Poly):
            return RatFn.from_poly(w)
        return RatFn.const(table, w)
    return LVec(table, {T1(0, 0): lift(omega1), T2(0, 0): lift(omega2)})
