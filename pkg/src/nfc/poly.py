"""Sparse multivariate polynomials over the Gaussian rationals.

Monomials are packed into a single integer: the total degree sits in the
highest field and each exponent gets a fixed-width field below it, first
symbol most significant.  Integer comparison of packed keys is therefore the
graded lexicographic order, and monomial multiplication is integer addition.
"""

import heapq

from gmpy2 import mpq

from .gauss import ONE, ZERO, GaussRat, cinv, cmul, rat_str, to_rat

BITS = 16
MAX_EXP = (1 << (BITS - 1)) - 1

KINDS = ("frequency", "coefficient", "parameter", "other")


class SymbolTable:
    """Ordered, immutable list of symbol names; the order fixes the monomial order."""

    def __init__(self, names, kinds=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("symbol names must be unique")
        if kinds is None:
            kinds = {}
        self.names = names
        self.kinds = tuple(kinds.get(nm, "other") for nm in names)
        self.index = {nm: i for i, nm in enumerate(names)}
        self.n = len(names)
        self.degshift = BITS * self.n
        self.lowmask = (1 << self.degshift) - 1
        self.fieldmask = (1 << BITS) - 1
        self.highbits = sum(1 << (BITS * i + BITS - 1) for i in range(self.n))
        self._shift = tuple(BITS * (self.n - 1 - i) for i in range(self.n))

    def __eq__(self, other):
        return isinstance(other, SymbolTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"SymbolTable({list(self.names)!r})"

    def __contains__(self, name):
        return name in self.index

    def of_kind(self, kind):
        return [nm for nm, k in zip(self.names, self.kinds) if k == kind]

    def pack(self, exps):
        key = 0
        deg = 0
        for e, sh in zip(exps, self._shift):
            if e < 0:
                raise ValueError("negative exponent")
            if e > MAX_EXP:
                raise OverflowError("exponent too large")
            key |= e << sh
            deg += e
        return key | (deg << self.degshift)

    def unpack(self, key):
        fm = self.fieldmask
        return tuple((key >> sh) & fm for sh in self._shift)

    def exp_of(self, key, i):
        return (key >> self._shift[i]) & self.fieldmask

    def var_key(self, i, e=1):
        return (e << self._shift[i]) | (e << self.degshift)

    def degree(self, key):
        return key >> self.degshift

    def divides(self, k2, k1):
        """True when monomial k2 divides monomial k1."""
        lm = self.lowmask
        h = self.highbits
        return (((k1 & lm) | h) - (k2 & lm)) & h == h

    def extend(self, names, kinds=None):
        extra = [nm for nm in names if nm not in self.index]
        kd = {nm: k for nm, k in zip(self.names, self.kinds)}
        if kinds:
            kd.update(kinds)
        return SymbolTable(list(self.names) + extra, kd)


def _c(x):
    if isinstance(x, tuple):
        return x
    if isinstance(x, GaussRat):
        return (x.re, x.im)
    return (to_rat(x), ZERO)


class Poly:
    __slots__ = ("table", "terms")

    def __init__(self, table, terms=None):
        self.table = table
        self.terms = terms if terms is not None else {}

    # construction
    @classmethod
    def zero(cls, table):
        return cls(table, {})

    @classmethod
    def const(cls, table, c):
        c = _c(c)
        if not c[0] and not c[1]:
            return cls(table, {})
        return cls(table, {0: c})

    @classmethod
    def one(cls, table):
        return cls(table, {0: (ONE, ZERO)})

    @classmethod
    def var(cls, table, name, e=1):
        i = table.index[name] if isinstance(name, str) else name
        return cls(table, {table.var_key(i, e): (ONE, ZERO)})

    @classmethod
    def monomial(cls, table, exps, c=1):
        c = _c(c)
        if not c[0] and not c[1]:
            return cls(table, {})
        if isinstance(exps, dict):
            full = [0] * table.n
            for nm, e in exps.items():
                full[table.index[nm]] = e
            exps = full
        return cls(table, {table.pack(exps): c})

    def _new(self, terms):
        return Poly(self.table, terms)

    # predicates
    def is_zero(self):
        return not self.terms

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def const_value(self):
        if not self.terms:
            return GaussRat(0)
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        re, im = self.terms[0]
        return GaussRat(re, im)

    def is_real(self):
        return all(not c[1] for c in self.terms.values())

    def is_monomial(self):
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    # arithmetic
    def _check(self, o):
        if o.table is not self.table and o.table != self.table:
            raise ValueError("polynomials over different symbol tables")

    def _lift(self, o):
        if isinstance(o, Poly):
            self._check(o)
            return o
        return Poly.const(self.table, o)

    def __add__(self, o):
        o = self._lift(o)
        if len(o.terms) > len(self.terms):
            a, b = o.terms, self.terms
        else:
            a, b = self.terms, o.terms
        r = dict(a)
        for k, (cr, ci) in b.items():
            v = r.get(k)
            if v is None:
                r[k] = (cr, ci)
            else:
                nr, ni = v[0] + cr, v[1] + ci
                if nr or ni:
                    r[k] = (nr, ni)
                else:
                    del r[k]
        return self._new(r)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: (-c[0], -c[1]) for k, c in self.terms.items()})

    def __sub__(self, o):
        o = self._lift(o)
        r = dict(self.terms)
        for k, (cr, ci) in o.terms.items():
            v = r.get(k)
            if v is None:
                r[k] = (-cr, -ci)
            else:
                nr, ni = v[0] - cr, v[1] - ci
                if nr or ni:
                    r[k] = (nr, ni)
                else:
                    del r[k]
        return self._new(r)

    def __rsub__(self, o):
        return self._lift(o) - self

    def scale(self, c):
        c = _c(c)
        if not c[0] and not c[1]:
            return self._new({})
        if c[1]:
            return self._new({k: cmul(v, c) for k, v in self.terms.items()})
        cr = c[0]
        if cr == 1:
            return self
        return self._new({k: (v[0] * cr, v[1] * cr) for k, v in self.terms.items()})

    def mul_monomial(self, key, c=(ONE, ZERO)):
        if c[1]:
            return self._new({k + key: cmul(v, c) for k, v in self.terms.items()})
        cr = c[0]
        return self._new({k + key: (v[0] * cr, v[1] * cr) for k, v in self.terms.items()})

    def __mul__(self, o):
        if not isinstance(o, Poly):
            return self.scale(o)
        self._check(o)
        a, b = self.terms, o.terms
        if not a or not b:
            return self._new({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            return self.__class__.mul_monomial(self._new(a), kb, cb)
        r = {}
        get = r.get
        breal = all(not c[1] for c in b.values())
        areal = all(not c[1] for c in a.values())
        if areal and breal:
            bl = [(k, c[0]) for k, c in b.items()]
            for ka, ca in a.items():
                car = ca[0]
                for kb, cbr in bl:
                    k = ka + kb
                    v = get(k)
                    p = car * cbr
                    if v is None:
                        r[k] = p
                    else:
                        r[k] = v + p
            return self._new({k: (v, ZERO) for k, v in r.items() if v})
        for ka, (ar, ai) in a.items():
            for kb, (br, bi) in b.items():
                k = ka + kb
                pr = ar * br - ai * bi
                pi = ar * bi + ai * br
                v = get(k)
                if v is None:
                    r[k] = (pr, pi)
                else:
                    r[k] = (v[0] + pr, v[1] + pi)
        return self._new({k: v for k, v in r.items() if v[0] or v[1]})

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.one(self.table)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.terms == o.terms
        try:
            return self.terms == Poly.const(self.table, o).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # structure
    def lead(self):
        k = max(self.terms)
        return k, self.terms[k]

    def lead_coeff(self):
        return GaussRat(*self.lead()[1])

    def total_degree(self):
        if not self.terms:
            return -1
        return max(self.terms) >> self.table.degshift

    def monic(self):
        if not self.terms:
            return self
        _, c = self.lead()
        if c == (ONE, ZERO):
            return self
        return self.scale(cinv(c))

    def vars(self):
        """Indices of the symbols actually occurring."""
        acc = 0
        for k in self.terms:
            acc |= k
        t = self.table
        return frozenset(i for i in range(t.n) if t.exp_of(acc, i))

    def degree_in(self, i):
        t = self.table
        return max((t.exp_of(k, i) for k in self.terms), default=-1)

    def to_univariate(self, i):
        """Coefficients as {exponent of symbol i: Poly free of symbol i}."""
        t = self.table
        sh = t._shift[i]
        fm = t.fieldmask
        ds = t.degshift
        out = {}
        for k, c in self.terms.items():
            e = (k >> sh) & fm
            kk = k - (e << sh) - (e << ds)
            out.setdefault(e, {})[kk] = c
        return {e: Poly(t, d) for e, d in out.items()}

    @classmethod
    def from_univariate(cls, table, coeffs, i):
        r = {}
        for e, p in coeffs.items():
            vk = table.var_key(i, e) if e else 0
            for k, c in p.terms.items():
                r[k + vk] = c
        return cls(table, r)

    def split_vars(self, idx):
        """Group terms by the exponents of the symbols in idx.

        Returns {exponent tuple over idx: Poly in the other symbols}."""
        t = self.table
        idx = sorted(idx)
        shifts = [t._shift[i] for i in idx]
        fm = t.fieldmask
        ds = t.degshift
        out = {}
        for k, c in self.terms.items():
            es = tuple((k >> sh) & fm for sh in shifts)
            kk = k
            for e, sh in zip(es, shifts):
                kk -= (e << sh) + (e << ds)
            out.setdefault(es, {})[kk] = c
        return {e: Poly(t, d) for e, d in out.items()}

    def conj(self):
        return self._new({k: (c[0], -c[1]) for k, c in self.terms.items()})

    def diff(self, name):
        t = self.table
        i = t.index[name] if isinstance(name, str) else name
        one = t.var_key(i, 1)
        r = {}
        for k, (cr, ci) in self.terms.items():
            e = t.exp_of(k, i)
            if e:
                r[k - one] = (cr * e, ci * e)
        return self._new(r)

    def divexact(self, d):
        """Exact quotient self / d; raises ArithmeticError when d does not divide."""
        if not d.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self._new({})
        if d.is_const():
            return self.scale(cinv(d.terms[0]))
        t = self.table
        dk, dc = d.lead()
        dinv = cinv(dc)
        rem = dict(self.terms)
        q = {}
        dterms = [(k, c) for k, c in d.terms.items() if k != dk]
        heap = [-k for k in rem]
        heapq.heapify(heap)
        while heap:
            rk = -heapq.heappop(heap)
            rc = rem.pop(rk, None)
            if rc is None:
                continue
            if not t.divides(dk, rk):
                raise ArithmeticError("inexact polynomial division")
            qk = rk - dk
            qc = cmul(rc, dinv)
            q[qk] = qc
            for k, c in dterms:
                kk = k + qk
                p = cmul(c, qc)
                v = rem.get(kk)
                if v is None:
                    rem[kk] = (-p[0], -p[1])
                    heapq.heappush(heap, -kk)
                else:
                    nr, ni = v[0] - p[0], v[1] - p[1]
                    if nr or ni:
                        rem[kk] = (nr, ni)
                    else:
                        del rem[kk]
        return self._new(q)

    def divides(self, other):
        try:
            other.divexact(self)
            return True
        except ArithmeticError:
            return False

    def subs(self, values):
        """Substitute symbols by numbers or polynomials (same table)."""
        t = self.table
        repl = {}
        for nm, v in values.items():
            if nm not in t.index:
                continue
            repl[t.index[nm]] = v if isinstance(v, Poly) else Poly.const(t, v)
        if not repl:
            return self
        powcache = {}

        def pw(i, e):
            key = (i, e)
            if key not in powcache:
                powcache[key] = repl[i] ** e
            return powcache[key]

        out = Poly.zero(t)
        acc = {}
        for k, c in self.terms.items():
            exps = t.unpack(k)
            keep = list(exps)
            factor = None
            for i in repl:
                e = exps[i]
                if e:
                    keep[i] = 0
                    f = pw(i, e)
                    factor = f if factor is None else factor * f
            base = Poly(t, {t.pack(keep): c})
            term = base if factor is None else base * factor
            for kk, cc in term.terms.items():
                v = acc.get(kk)
                if v is None:
                    acc[kk] = cc
                else:
                    acc[kk] = (v[0] + cc[0], v[1] + cc[1])
        out.terms = {k: v for k, v in acc.items() if v[0] or v[1]}
        return out

    def retable(self, table):
        """Re-express in another symbol table containing all used symbols."""
        if table == self.table:
            return Poly(table, self.terms)
        src = self.table
        r = {}
        for k, c in self.terms.items():
            exps = src.unpack(k)
            full = [0] * table.n
            for i, e in enumerate(exps):
                if e:
                    if src.names[i] not in table.index:
                        raise ValueError(f"symbol {src.names[i]} missing from target table")
                    full[table.index[src.names[i]]] = e
            r[table.pack(full)] = c
        return Poly(table, r)

    def items(self):
        """(exponent tuple, GaussRat) pairs in decreasing monomial order."""
        t = self.table
        for k in sorted(self.terms, reverse=True):
            yield t.unpack(k), GaussRat(*self.terms[k])

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return poly_str(self)


def _coeff_str(c, with_mono):
    re, im = c
    if not im:
        s = rat_str(re)
        if with_mono and s in ("1", "-1"):
            return s[:-1]
        return s
    if not re:
        s = rat_str(im)
        return f"{s}*I"
    return f"({rat_str(re)}+{rat_str(im)}*I)"


def mono_str(table, exps):
    parts = []
    for nm, e in zip(table.names, exps):
        if e == 1:
            parts.append(nm)
        elif e:
            parts.append(f"{nm}^{e}")
    return "*".join(parts)


def poly_str(p):
    if not p.terms:
        return "0"
    t = p.table
    out = []
    for k in sorted(p.terms, reverse=True):
        c = p.terms[k]
        m = mono_str(t, t.unpack(k))
        cs = _coeff_str(c, bool(m))
        if m:
            if cs == "":
                s = m
            elif cs == "-":
                s = "-" + m
            else:
                s = f"{cs}*{m}"
        else:
            s = cs
        out.append(s)
    s = " + ".join(out)
    return s.replace("+ -", "- ")


def lift_number(table, x):
    if isinstance(x, Poly):
        return x
    return Poly.const(table, x)


def is_rational_const(p):
    return p.is_const() and (not p.terms or not p.terms[0][1])


def const_rational(p):
    if not p.terms:
        return mpq(0)
    return p.terms[0][0]
