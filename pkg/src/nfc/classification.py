"""Structural invariants of a first-level normal form and the band-matrix
rank machinery behind the higher levels.

s, p locate the lowest nonzero Eulerian row, r, q the next one after the
s+1 level.  The convolution matrix M_d^c records how the grade-d Eulerian
row acts on the c+1 generators E_{c-j,j}; block matrices built from two
such bands, and Schur complements of them, count how many extra Eulerian
terms a level can remove.
"""

from dataclasses import dataclass, field

from .lie import BasisElem, LVec
from .matrix import RFMatrix, rf_rank
from .ratfn import RatFn


class PivotError(ArithmeticError):
    """A coefficient that the branch divides by turned out to be zero."""


@dataclass(frozen=True)
class Finite:
    value: int

    def is_finite(self):
        return True

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class UnresolvedBeyond:
    """No witness up to grade N.  Not a proof of infinity."""
    N: int

    def is_finite(self):
        return False

    def __str__(self):
        return f"unresolved(>{self.N})"


ExtNat = (Finite, UnresolvedBeyond)


def _first_row(coeff, lo, N):
    # least m in [lo, N] with some nonzero coeff(m-j, j); then least such j
    for m in range(lo, N + 1):
        for j in range(m + 1):
            if not coeff(m - j, j).is_zero():
                return Finite(m), Finite(j)
    return UnresolvedBeyond(N), UnresolvedBeyond(N)


def detect_s_p(v1: LVec, N: int):
    return _first_row(lambda a, b: v1.get(BasisElem("E", a, b)), 1, N)


def detect_r_q(v: LVec, s: int, N: int):
    return _first_row(lambda a, b: v.get(BasisElem("E", a, b)), s + 1, N)


def detect_si_pi(v: LVec, i: int, N: int):
    kind = "T1" if i == 1 else "T2"
    return _first_row(lambda a, b: v.get(BasisElem(kind, a, b)), 1, N)


def eulerian_row(v: LVec, d: int):
    """(b_{d,0}, ..., b_{0,d})"""
    return [v.get(BasisElem("E", d - j, j)) for j in range(d + 1)]


def conv_matrix(coeffs, cols: int, table=None) -> RFMatrix:
    """(d+c+1) x (c+1) band matrix; column j is coeffs shifted down by j.

    cols is the number of columns c+1."""
    coeffs = list(coeffs)
    if table is None:
        table = next((x.table for x in coeffs if isinstance(x, RatFn)), None)
    coeffs = [x if isinstance(x, RatFn) else RatFn.const(table, x) for x in coeffs]
    d = len(coeffs) - 1
    M = RFMatrix.zeros(table, d + cols, cols)
    for j in range(cols):
        for i, b in enumerate(coeffs):
            M[i + j, j] = b
    return M


def block_matrix(row_r, row_s, l: int, scaled=False) -> RFMatrix:
    """[M_r^l  M_s^{l+r-s}] built from the grade-r and grade-s Eulerian rows.

    With scaled=True the blocks carry the bracket scalars 2(s-r) and 2(r-s)
    (only meaningful at l = s, where this is the homological matrix itself)."""
    r, s = len(row_r) - 1, len(row_s) - 1
    left = conv_matrix(row_r, l + 1)
    right = conv_matrix(row_s, l + r - s + 1)
    if scaled:
        left = left.scale(2 * (s - r))
        right = right.scale(2 * (r - s))
    return left.hstack(right)


@dataclass
class Partition:
    A: RFMatrix
    B: RFMatrix
    C: RFMatrix
    D: RFMatrix
    pivot: tuple  # (i, j) of the coefficient b_{i,j} on B's diagonal
    dropped_rows: int
    dropped_cols: int

    def schur(self):
        return schur_complement(self)


def partition(M: RFMatrix, p, q, s, r, l, recipe=None) -> Partition:
    """Split [M_r^l | M_s^{l+r-s}] into [[A, B], [C, D]].

    Recipes:
      "right"  B comes from the M_s block, diagonal b_{s-p,p}.
               q < p: drop the first p rows and the first p-q columns of M_r.
               p <= q: drop the first q rows and the first q-p columns of M_s;
               B takes the next l+r-s+1-(q-p) rows.
      "left"   (p <= q only) drop the first q rows and the first q-p columns
               of M_s; B is M_r^l on the next l+1 rows, diagonal b_{r-q,q},
               A is what is left of M_s on the same rows.
    Default: "right".
    """
    recipe = recipe or "right"
    nl = l + 1
    nr = l + r - s + 1
    rows = M.rows
    if recipe == "right":
        if q < p:
            top = p
            lcols = list(range(p - q, nl))
            rcols = list(range(nl, nl + nr))
            nb = nr
            dropped_cols = p - q
        else:
            top = q
            lcols = list(range(nl))
            rcols = list(range(nl + q - p, nl + nr))
            nb = len(rcols)
            dropped_cols = q - p
        brows = list(range(top, top + nb))
        crows = list(range(top + nb, rows))
        return Partition(M.submatrix(brows, lcols), M.submatrix(brows, rcols),
                         M.submatrix(crows, lcols), M.submatrix(crows, rcols),
                         (s - p, p), top, dropped_cols)
    if recipe == "left":
        if q < p:
            raise ValueError("the left-pivot recipe needs p <= q")
        top = q
        rcols = list(range(nl + q - p, nl + nr))
        lcols = list(range(nl))
        brows = list(range(top, top + nl))
        crows = list(range(top + nl, rows))
        return Partition(M.submatrix(brows, rcols), M.submatrix(brows, lcols),
                         M.submatrix(crows, rcols), M.submatrix(crows, lcols),
                         (r - q, q), top, q - p)
    raise ValueError(f"unknown partition recipe {recipe!r}")


def _lower_solve(B: RFMatrix, A: RFMatrix) -> RFMatrix:
    # forward substitution; B is square lower triangular with nonzero diagonal
    n = B.rows
    X = RFMatrix.zeros(A.data[0].table if A.data else B.data[0].table, n, A.cols)
    for c in range(A.cols):
        for i in range(n):
            acc = A[i, c]
            for k in range(i):
                if not B[i, k].is_zero() and not X[k, c].is_zero():
                    acc = acc - B[i, k] * X[k, c]
            X[i, c] = acc / B[i, i]
    return X


def schur_complement(P: Partition) -> RFMatrix:
    B = P.B
    for i in range(B.rows):
        if B[i, i].is_zero():
            a, b = P.pivot
            raise PivotError(f"pivot coefficient b_{{{a},{b}}} vanishes")
        for k in range(i + 1, B.cols):
            if not B[i, k].is_zero():
                raise ValueError("B is not lower triangular")
    if P.C.rows == 0:
        return P.C
    if P.B.rows == 0:
        return P.C
    return P.C - P.D @ _lower_solve(P.B, P.A)


def schur_u(Mblock: RFMatrix, p, q, s, r, l, recipe=None) -> int:
    """rank(C - D B^{-1} A) for the partitioned block matrix.

    Returns 0 on the stretch where no Schur step exists yet
    (l+1 <= p-q, or l+r-s < q-p)."""
    if q < p and l + 1 <= p - q:
        return 0
    if p <= q and (recipe or "right") == "right" and l + r - s < q - p:
        return 0
    P = partition(Mblock, p, q, s, r, l, recipe)
    S = schur_complement(P)
    if S.rows == 0 or S.cols == 0:
        return 0
    return rf_rank(S)


def rank_predict(l, alpha, r, s, p=None, q=None):
    """(rank of [M_r^l M_s^{l+r-s}], u_l) from the rank law.

    u_l is None when p, q are not given."""
    if l <= alpha - r - 2:
        rank = 2 * l + r - s + 2
    else:
        rank = alpha + l - s
    if p is None or q is None:
        return rank, None
    if l + 1 <= p - q:
        u = 0
    elif l <= alpha - r - 2:
        u = l + 1 - p + q
    else:
        u = alpha - r - 1 - p + q
    return rank, u


def gate_expression(b10, b01, b11, b20, b02):
    return b01 * b01 * b20 - b01 * b10 * b11 + b02 * b10 * b10


def generic_gate(b10, b01, b11, b20, b02) -> bool:
    return not gate_expression(b10, b01, b11, b20, b02).is_zero()


@dataclass
class Classification:
    s: object
    p: object
    r: object = None
    q: object = None
    s1: object = None
    p1: object = None
    s2: object = None
    p2: object = None
    alpha: int = None
    uTable: dict = field(default_factory=dict)
    genericGate: bool = None

    def as_dict(self):
        out = {}
        for k in ("s", "p", "r", "q", "s1", "p1", "s2", "p2"):
            v = getattr(self, k)
            out[k] = None if v is None else (v.value if isinstance(v, Finite) else f">{v.N}")
        out["alpha"] = self.alpha
        out["uTable"] = {str(k): v for k, v in sorted(self.uTable.items())}
        out["genericGate"] = self.genericGate
        return out


def classify_rows(v: LVec, N: int, lmax=None, recipe=None) -> Classification:
    """Invariants of a field whose grade-s and grade-r rows are already final.

    v should be the s+1 level output so that r, q are meaningful."""
    s, p = detect_s_p(v, N)
    cl = Classification(s, p)
    cl.genericGate = generic_gate(*(v.get(BasisElem("E", a, b)) for a, b in ((1, 0), (0, 1), (1, 1), (2, 0), (0, 2))))
    if not isinstance(s, Finite):
        cl.s1, cl.p1 = detect_si_pi(v, 1, N)
        cl.s2, cl.p2 = detect_si_pi(v, 2, N)
        return cl
    r, q = detect_r_q(v, s.value, N)
    cl.r, cl.q = r, q
    if not isinstance(r, Finite):
        return cl
    S, P, R, Q = s.value, p.value, r.value, q.value
    row_r = eulerian_row(v, R)
    row_s = eulerian_row(v, S)
    cl.alpha = rf_rank(block_matrix(row_r, row_s, S))
    for l in range(0, (lmax if lmax is not None else S) + 1):
        cl.uTable[l] = schur_u(block_matrix(row_r, row_s, l), P, Q, S, R, l, recipe)
    return cl
