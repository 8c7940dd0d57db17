"""Independent checks that work on explicit vector fields in phase variables.

Nothing here uses the graded engine: a normal form is accepted when replaying
the recorded generators as Lie-series transformations of the explicit field
reproduces it, up to the truncation degree.
"""

from gmpy2 import mpq

from .engine import steps_to_generators
from .lie import LVec
from .phase import PhaseField, PhaseRing, euler_field, exp_rho, real_to_complex, rotation_field


def to_phase(ring: PhaseRing, v: LVec) -> PhaseField:
    out = PhaseField.zero(ring)
    for b, c in v.items():
        g = ring.invariant(b.m, b.n) * ring.lift(c)
        if b.kind == "E":
            out = out + euler_field(ring, g)
        else:
            out = out + rotation_field(ring, g, 1 if b.kind == "T1" else 2)
    return out


def time_scalar(ring: PhaseRing, T):
    if T.is_zero():
        return None
    g = ring.zero()
    for (m, n), c in T.terms.items():
        g = g + ring.invariant(m, n) * ring.lift(c)
    return g


def _cut(F, c):
    return F.truncate(c)


def replay(v: LVec, res, omega=(1, mpq(17, 7))) -> bool:
    """Replaying res.steps on v gives the tracked output field up to phase degree 2N+1.

    The frequencies are fixed to numbers since they only enter through the
    rotation parts and v carries its own Theta_{0,0} coefficients."""
    ring = PhaseRing(v.table, *omega)
    cut = 2 * res.N + 1
    V = to_phase(ring, v)
    for _, T, S in steps_to_generators(res.steps, v.table):
        V = exp_rho(time_scalar(ring, T), to_phase(ring, S) if S else None, V, _cut, cut).truncate(cut)
    out = LVec(v.table, {b: c for (b, mu), c in res.raw.items()})
    return V.equals(to_phase(ring, out).truncate(cut))


def first_level_replay(ring: PhaseRing, f, out) -> bool:
    """Replay the first-level generators on v0 + f E and compare with the reported form.

    Agreement is checked below the top phase degree 2n, which still carries
    unremoved residual terms."""
    cut = out.truncationDegree
    w1, w2 = ring.omega
    Vf = rotation_field(ring, ring.lift(w1), 1) + rotation_field(ring, ring.lift(w2), 2)
    Vf = Vf + euler_field(ring, real_to_complex(ring, f))
    for h in out.generators:
        Vf = exp_rho(None, euler_field(ring, h), Vf, _cut, cut).truncate(cut)
    expect = to_phase(ring, out.normalForm).truncate(cut)
    return Vf.equals(expect)
