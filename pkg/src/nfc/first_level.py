"""First-level normal form of w1 Theta^1 + w2 Theta^2 + E_f by iterated generators.

Step k removes the non-resonant degree-k part of f with the Eulerian
generator E_{h_k}.  Since E_{h_k} only meets homogeneous pieces through
[h E, g E] = (deg h - deg g) h g E, its exponential acts on f by a closed
product formula, so the loop never leaves scalar polynomials.
"""

from dataclasses import dataclass, field
from math import factorial

from gmpy2 import mpq

from .gauss import ZERO
from .lie import E, LVec, v0
from .phase import PHASE, REAL, PhasePoly, PhaseRing, real_to_complex
from .poly import Poly, SymbolTable
from .ratfn import RatFn


class NormalizationError(ArithmeticError):
    pass


@dataclass
class FirstLevelOutput:
    normalForm: LVec
    generators: list
    truncationDegree: int
    coefficients: dict = field(default_factory=dict)
    residual: PhasePoly = None
    grades: list = field(default_factory=list)  # grade of each generator; repeats only with parameters


def coefficient_table(table: SymbolTable, omega=("omega1", "omega2")) -> SymbolTable:
    """The input table without the real phase variables; frequencies are put first."""
    kinds = dict(zip(table.names, table.kinds))
    rest = [nm for nm in table.names if nm not in REAL and nm not in PHASE]
    front = [w for w in omega if isinstance(w, str)]
    for w in front:
        kinds[w] = "frequency"
        if w in rest:
            rest.remove(w)
    return SymbolTable(front + rest, kinds)


def _resonant(exps):
    return exps[0] == exps[1] and exps[2] == exps[3]


def generator_h(ring: PhaseRing, fprev: PhasePoly, k: int) -> PhasePoly:
    """I c / ((i1-j1) w1 + (i2-j2) w2) z^i w^j over the non-resonant degree-k monomials of fprev."""
    part = fprev.homogeneous(k)
    if part.is_zero():
        return ring.zero()
    t = ring.table
    pieces = []
    factors = []
    for exps, c in part.num.split_vars(range(4)).items():
        if _resonant(exps):
            continue
        L = ring.rotation_factor(exps)
        if L.is_zero():
            raise ZeroDivisionError(f"small divisor vanishes for monomial {exps}")
        if L.is_const():
            pieces.append((exps, c.scale(_times_i_over(L.terms[0])), None))
            continue
        lc = L.lead()[1]
        Lm = L.monic()
        if Lm not in factors:
            factors.append(Lm)
        pieces.append((exps, c.scale(_times_i_over(lc)), Lm))
    if not pieces:
        return ring.zero()
    full = Poly.one(t)
    for f in factors:
        full = full * f
    others = {f: full.divexact(f) for f in factors}
    num = Poly.zero(t)
    for exps, c, Lm in pieces:
        mult = full if Lm is None else others[Lm]
        num = num + (c * mult).mul_monomial(ring.mono(exps))
    den = dict(fprev.den)
    for f in factors:
        den[f] = den.get(f, 0) + 1
    return reduce_phase(PhasePoly(ring, num, den))


def _times_i_over(c):
    # I / c for a Gaussian rational pair c
    cr, ci = c
    n = cr * cr + ci * ci
    return (ci / n, cr / n)


def reduce_phase(p: PhasePoly) -> PhasePoly:
    """Cancel denominator factors that divide the numerator."""
    if p.num.is_zero():
        return PhasePoly(p.ring, p.num, {})
    num = p.num
    den = {}
    for f, e in p.den.items():
        while e:
            try:
                num = num.divexact(f)
            except ArithmeticError:
                break
            e -= 1
        if e:
            den[f] = e
    return PhasePoly(p.ring, num, den)


def product_weight(m: int, k: int, i: int):
    """prod_{j=2}^{m+1} ((j-m)k - i) / m!"""
    p = 1
    for j in range(2, m + 2):
        p *= (j - m) * k - i
    return mpq(p, factorial(m))


def pushforward(ring: PhaseRing, fprev: PhasePoly, hk: PhasePoly, k: int, n: int) -> PhasePoly:
    """Image of f under exp ad_{E_{h_k}}, truncated at phase degree n."""
    out = fprev.truncate(n)
    if hk.is_zero():
        return out
    out = out + hk.rotate()
    hp = [ring.one()]
    for i in range(1, n - k + 1):
        fi = fprev.homogeneous(i)
        if fi.is_zero():
            continue
        for m in range(1, (n - i) // k + 1):
            w = product_weight(m, k, i)
            if not w:
                continue
            while len(hp) <= m:
                hp.append(hp[-1] * hk)
            out = out + (hp[m] * fi).scale((w, ZERO))
    return reduce_phase(out)


def extract_coeff(ring: PhaseRing, f: PhasePoly, k: int, j: int) -> RatFn:
    """Coefficient of (z1 w1)^{k-j} (z2 w2)^j in f = f^{2k-1}."""
    if f.is_zero():
        return RatFn.zero(ring.ctable)
    for exps in f.phase_support():
        d = sum(exps)
        if 0 < d < 2 * k and not _resonant(exps):
            raise NormalizationError(f"normalization incomplete at grade {2 * k}")
    return f.coeff((k - j, k - j, j, j))


def _mu_truncate(f: PhasePoly, idx, M):
    t = f.num.table
    keep = {k: c for k, c in f.num.terms.items() if sum(t.exp_of(k, i) for i in idx) <= M}
    return PhasePoly(f.ring, Poly(t, keep), f.den)


def _free_constant(ring, f, idx):
    """Constant term of f with every parameter set to zero."""
    c = f.homogeneous(0)
    t = c.num.table
    return PhasePoly(ring, Poly(t, {k: x for k, x in c.num.terms.items()
                                    if not any(t.exp_of(k, i) for i in idx)}), c.den)


def first_level(ring: PhaseRing, f, n: int, on_step=None, mu_names=(), M=0) -> FirstLevelOutput:
    """Truncated first-level normal form up to grade n (phase degree 2n).

    f is a real polynomial in x1, y1, x2, y2 (Poly) or a PhasePoly.  Symbols
    listed in mu_names are parameters: f may then have a parameter-dependent
    constant term b_{0,0}(mu), and all parameter monomials of degree above M
    are dropped.
    """
    if not isinstance(f, PhasePoly):
        f = real_to_complex(ring, f)
    f = f.truncate(2 * n)
    idx = [ring.table.index[m] for m in mu_names]
    if idx:
        f = _mu_truncate(f, idx, M)
        if not _free_constant(ring, f, idx).is_zero():
            raise NormalizationError("nonzero constant part at zero parameters: apply primary shift first")
    elif f.homogeneous(0).num.terms:
        raise NormalizationError("f must vanish at the origin")
    f0 = f.homogeneous(0)
    ct = ring.ctable
    nf = v0(ct, *_omegas(ring))
    if not f0.is_zero():
        nf = nf + LVec(ct, {E(0, 0): f0.coeff((0, 0, 0, 0))})
    gens = []
    grades = []
    coeffs = {}
    D = 2 * n
    for k in range(1, D):
        # a parameter constant feeds k*h*f0 back into degree k; it is one parameter order higher
        for rep in range(M + 1 if idx else 1):
            h = generator_h(ring, f, k)
            if rep and h.is_zero():
                break
            gens.append(h)
            grades.append(k)
            f = pushforward(ring, f, h, k, D)
            if not f0.is_zero():
                f = reduce_phase(f + (h * f0).truncate(D).scale((mpq(k), ZERO)))
            if idx:
                f = _mu_truncate(f, idx, M)
        if on_step:
            on_step(k, f)
        if k % 2 == 1:
            K = (k + 1) // 2
            for j in range(K + 1):
                b = extract_coeff(ring, f, K, j)
                coeffs[(K - j, j)] = b
                if not b.is_zero():
                    nf = nf + LVec(ct, {E(K - j, j): b})
    return FirstLevelOutput(nf, gens, D, coeffs, f, grades)


def _omegas(ring):
    out = []
    for w in ring.omega:
        r = RatFn.from_poly(w.retable(ring.ctable)) if not w.is_const() else RatFn.const(ring.ctable, w.const_value())
        out.append(r)
    return out
