"""Structure constants of the Eulerian/rotational algebra."""

import random

from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from nfc.lie import (KINDS, BasisElem, Grading, LVec, E, T1, T2, TimeGen, bracket, bracket_basis,
                     combined_action, grade_of, rescale_action, v0)
from nfc.oracles import time_scalar, to_phase
from nfc.phase import PhaseRing, field_bracket
from nfc.poly import SymbolTable
from nfc.ratfn import RatFn
from nfc.suites import random_lvec

T = SymbolTable([])
RING = PhaseRing(T, 1, mpq(17, 7))

basis = st.builds(BasisElem, st.sampled_from(KINDS), st.integers(0, 3), st.integers(0, 3))


def one(b):
    return LVec.single(T, b)


def test_structure_constants():
    assert bracket_basis(E(1, 0), E(0, 2)) == (2 * (1 - 2), E(1, 2))
    assert bracket_basis(T1(1, 1), E(2, 0)) == (4, T1(3, 1))
    assert bracket_basis(E(2, 0), T2(0, 1)) == (-2, T2(2, 1))
    assert bracket_basis(T1(1, 0), T2(0, 1)) is None
    assert bracket_basis(E(1, 1), E(2, 0)) is None


def test_v0_bracket_vanishes_on_algebra():
    w = v0(T, 1, mpq(17, 7))
    for b in (E(1, 0), E(2, 1), T1(0, 2), T2(1, 1)):
        assert bracket(w, one(b)).is_zero()


@settings(max_examples=80, deadline=None)
@given(basis, basis)
def test_bracket_matches_phase_space_vector_fields(a, b):
    # independent route: commutator of the explicit vector fields in z, w coordinates
    lhs = to_phase(RING, bracket(one(a), one(b)))
    rhs = field_bracket(to_phase(RING, one(a)), to_phase(RING, one(b)))
    assert lhs.equals(rhs)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), basis)
def test_time_rescaling_is_multiplication(m, n, b):
    Z = TimeGen(T, {(m, n): 1})
    lhs = to_phase(RING, rescale_action(Z, one(b)))
    rhs = to_phase(RING, one(b)).times(time_scalar(RING, Z))
    assert lhs.equals(rhs)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_antisymmetry_and_jacobi(seed):
    rng = random.Random(seed)
    x, y, z = (random_lvec(rng, T, 3, 3) for _ in range(3))
    assert bracket(x, y) == -bracket(y, x)
    jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert jac.is_zero()


@settings(max_examples=60, deadline=None)
@given(basis, basis, st.integers(0, 4), st.integers(0, 3))
def test_grade_additivity(a, b, offset, mu_weight):
    g = Grading(offset, mu_weight)
    for key in bracket(one(a), one(b)).support():
        assert grade_of(key, g) == grade_of(a, g) + grade_of(b, g)


def test_combined_action_is_linear():
    Z = TimeGen(T, {(1, 0): 2})
    S = LVec(T, {E(0, 1): RatFn.const(T, 3)})
    v = LVec(T, {E(1, 0): RatFn.const(T, 1), T1(0, 0): RatFn.const(T, 1)})
    assert combined_action(Z, S, v) == rescale_action(Z, v) + bracket(S, v)
