"""Dense matrices over the rational-function field.

rf_rank clears denominators row by row and runs fraction-free (Bareiss)
elimination, so every intermediate entry stays a polynomial.  rf_solve is a
plain Gauss-Jordan over the field, used where a particular solution is needed.
"""

from .poly import Poly
from .polygcd import poly_gcd
from .ratfn import RatFn

INCONSISTENT = "inconsistent"


class RFMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data):
        if len(data) != rows * cols:
            raise ValueError("entry count must equal rows*cols")
        self.rows = rows
        self.cols = cols
        self.data = list(data)

    @classmethod
    def from_rows(cls, rows, table=None):
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        flat = [x for r in rows for x in r]
        if table is None:
            table = next((x.table for x in flat if isinstance(x, RatFn)), None)
        out = []
        for x in flat:
            if isinstance(x, RatFn):
                out.append(x)
            elif isinstance(x, Poly):
                out.append(RatFn.from_poly(x))
            else:
                out.append(RatFn.const(table, x))
        return cls(nr, nc, out)

    @classmethod
    def zeros(cls, table, rows, cols):
        z = RatFn.zero(table)
        return cls(rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, table, n):
        m = cls.zeros(table, n, n)
        for i in range(n):
            m[i, i] = RatFn.one(table)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.cols + j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.data[i * self.cols + j] = v

    def row(self, i):
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return [self.data[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        return RFMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def submatrix(self, rows, cols):
        rows = list(rows)
        cols = list(cols)
        return RFMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return RFMatrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)])

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return RFMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    def scale(self, c):
        return RFMatrix(self.rows, self.cols, [x * c for x in self.data])

    def __add__(self, o):
        return RFMatrix(self.rows, self.cols, [a + b for a, b in zip(self.data, o.data)])

    def __sub__(self, o):
        return RFMatrix(self.rows, self.cols, [a - b for a, b in zip(self.data, o.data)])

    def __matmul__(self, o):
        if self.cols != o.rows:
            raise ValueError("shape mismatch")
        table = self.data[0].table if self.data else o.data[0].table
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(o.cols):
                acc = RatFn.zero(table)
                for k in range(self.cols):
                    a = ri[k]
                    if a.is_zero():
                        continue
                    b = o[k, j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                out.append(acc)
        return RFMatrix(self.rows, o.cols, out)

    def apply(self, vec):
        table = self.data[0].table
        out = []
        for i in range(self.rows):
            acc = RatFn.zero(table)
            for a, x in zip(self.row(i), vec):
                if not a.is_zero() and not x.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return out

    def subs(self, values):
        return RFMatrix(self.rows, self.cols, [x.subs(values) for x in self.data])

    def __eq__(self, o):
        return isinstance(o, RFMatrix) and self.rows == o.rows and self.cols == o.cols and self.data == o.data

    def is_zero(self):
        return all(x.is_zero() for x in self.data)

    def __repr__(self):
        return "RFMatrix([" + ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows)) + "])"


def _poly_rows(M):
    """Each row multiplied by the lcm of its denominators."""
    rows = []
    for i in range(M.rows):
        r = M.row(i)
        l = None
        for x in r:
            if x.is_zero() or x.den.is_const():
                continue
            if l is None:
                l = x.den
            else:
                g = poly_gcd(l, x.den)
                l = l.divexact(g) * x.den
        if l is None:
            rows.append([x.num for x in r])
        else:
            rows.append([Poly.zero(l.table) if x.is_zero() else x.num * l.divexact(x.den) for x in r])
    return rows


def _numeric_rank(rows):
    # all entries constant: ordinary elimination over Q(i)
    A = [[x.const_value() for x in r] for r in rows]
    nr = len(A)
    nc = len(A[0]) if A else 0
    rank = 0
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = A[rank][c].inverse()
        for i in range(rank + 1, nr):
            if A[i][c].is_zero():
                continue
            f = A[i][c] * inv
            A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
        if rank == nr:
            break
    return rank


def bareiss_rank(rows):
    """Rank of a polynomial matrix (list of rows of Poly) by fraction-free elimination."""
    if not rows or not rows[0]:
        return 0
    if all(x.is_const() for r in rows for x in r):
        return _numeric_rank(rows)
    A = [list(r) for r in rows]
    nr, nc = len(A), len(A[0])
    t = A[0][0].table
    prev = Poly.one(t)
    rank = 0
    for c in range(nc):
        piv = None
        best = None
        for i in range(rank, nr):
            if not A[i][c].is_zero():
                size = len(A[i][c])
                if best is None or size < best:
                    piv, best = i, size
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        for i in range(rank + 1, nr):
            ai = A[i]
            f = ai[c]
            newrow = []
            for j in range(nc):
                if j <= c:
                    newrow.append(Poly.zero(t) if j == c else ai[j])
                    continue
                v = p * ai[j] - f * A[rank][j]
                if not v.is_zero():
                    v = v.divexact(prev)
                newrow.append(v)
            A[i] = newrow
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def rf_rank(M):
    """Rank over the field of fractions (generic rank in the free symbols)."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return bareiss_rank(_poly_rows(M))


def rf_solve(M, rhs):
    """One exact solution of M x = rhs (free variables set to 0), or INCONSISTENT."""
    table = (M.data[0] if M.data else rhs[0]).table
    nr, nc = M.rows, M.cols
    A = [M.row(i) + [rhs[i]] for i in range(nr)]
    pivcols = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(nr):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [a - f * b if not b.is_zero() else a for a, b in zip(A[i], A[r])]
        pivcols.append(c)
        r += 1
        if r == nr:
            break
    for i in range(r, nr):
        if not A[i][nc].is_zero():
            return INCONSISTENT
    x = [RatFn.zero(table) for _ in range(nc)]
    for i, c in enumerate(pivcols):
        x[c] = A[i][nc]
    return x


def rf_nullspace(rows, ncols, table):
    """Basis of {x : rows x = 0}; rows is a list of lists of RatFn."""
    A = [list(r) for r in rows]
    nr = len(A)
    pivcols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nr) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv if not x.is_zero() else x for x in A[r]]
        for i in range(nr):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [a - f * b if not b.is_zero() else a for a, b in zip(A[i], A[r])]
        pivcols.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(ncols) if c not in set(pivcols)]
    zero = RatFn.zero(table)
    one = RatFn.one(table)
    basis = []
    for fc in free:
        x = [zero] * ncols
        x[fc] = one
        for i, pc in enumerate(pivcols):
            if not A[i][fc].is_zero():
                x[pc] = -A[i][fc]
        basis.append(x)
    return basis


def greedy_rows(rows, table):
    """Indices of the lexicographically first maximal independent set of rows."""
    chosen = []
    reduced = []  # (pivot col, normalized row)
    for idx, row in enumerate(rows):
        v = list(row)
        for pc, prow in reduced:
            f = v[pc]
            if not f.is_zero():
                v = [a - f * b if not b.is_zero() else a for a, b in zip(v, prow)]
        pc = next((j for j, x in enumerate(v) if not x.is_zero()), None)
        if pc is None:
            continue
        inv = v[pc].inverse()
        v = [x * inv if not x.is_zero() else x for x in v]
        # keep earlier rows reduced in this column too
        reduced = [(c, [a - r[pc] * b if not b.is_zero() else a for a, b in zip(r, v)] if not r[pc].is_zero() else r) for c, r in reduced]
        reduced.append((pc, v))
        chosen.append(idx)
    return chosen
