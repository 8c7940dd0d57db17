import random

import pytest
from gmpy2 import mpq

from nfc.first_level import NormalizationError, coefficient_table, first_level
from nfc.lie import E
from nfc.oracles import first_level_replay
from nfc.parametric import parametric_first_level
from nfc.parser import PHASE_REAL, evaluate, parse_expression
from nfc.phase import PhaseRing
from nfc.poly import Poly, SymbolTable
from nfc.ratfn import RatFn

QUAD = ["x1", "y1", "x2", "y2", "x1^2", "x1*y1", "x1*x2", "x1*y2", "y1^2", "y1*x2", "y1*y2",
        "x2^2", "x2*y2", "y2^2"]


def random_f(seed, cubic=False):
    rng = random.Random(seed)
    T = SymbolTable(PHASE_REAL)
    terms = list(QUAD) + (["x1^3", "x1*y2^2", "y1*x2*y2"] if cubic else [])
    f = Poly.zero(T)
    for m in terms:
        c = mpq(rng.randint(-5, 5), rng.randint(1, 4))
        f = f + evaluate(parse_expression(m), T).scale(c)
    return T, f


@pytest.mark.parametrize("seed", range(4))
def test_generators_conjugate_input_to_output(seed):
    T, f = random_f(seed, cubic=seed % 2 == 1)
    ring = PhaseRing(SymbolTable([]), 1, mpq(17, 7))
    out = first_level(ring, f, 3)
    assert first_level_replay(ring, f, out)


def test_replay_detects_wrong_output():
    T, f = random_f(0)
    ring = PhaseRing(SymbolTable([]), 1, mpq(17, 7))
    out = first_level(ring, f, 3)
    g = f + Poly.var(T, "x1") ** 2
    assert not first_level_replay(ring, g, out)


def test_symbolic_lowest_coefficients():
    T = SymbolTable(PHASE_REAL + ("omega1", "omega2", "a5", "a9", "a12", "a14"))
    f = evaluate(parse_expression("a5*x1^2 + a9*y1^2 + a12*x2^2 + a14*y2^2"), T)
    ct = coefficient_table(T)
    out = first_level(PhaseRing(ct), f, 2)
    half = mpq(1, 2)
    assert out.coefficients[(1, 0)] == (RatFn.var(ct, "a5") + RatFn.var(ct, "a9")) * half
    assert out.coefficients[(0, 1)] == (RatFn.var(ct, "a12") + RatFn.var(ct, "a14")) * half


def test_constant_part_is_rejected():
    T = SymbolTable(PHASE_REAL)
    ring = PhaseRing(SymbolTable([]), 1, 2)
    with pytest.raises(NormalizationError):
        first_level(ring, Poly.const(T, 1) + Poly.var(T, "x1"), 2)


def test_parametric_quadratic_gains_parameter():
    T = SymbolTable(PHASE_REAL + ("mu1",), {"mu1": "parameter"})
    f = evaluate(parse_expression("x1^2 + mu1*x1^2"), T)
    ct = coefficient_table(T)
    ring = PhaseRing(ct, 1, mpq(17, 7))
    w = parametric_first_level(ring, f, 2, 1, ("mu1",))
    b10 = w.field.get(E(1, 0))
    assert b10 == (RatFn.one(ct) + RatFn.var(ct, "mu1")) * mpq(1, 2)


def test_parametric_constant_part():
    T = SymbolTable(PHASE_REAL + ("mu1",), {"mu1": "parameter"})
    ct = coefficient_table(T)
    ring = PhaseRing(ct, 1, mpq(17, 7))
    f = evaluate(parse_expression("mu1 + x1^2"), T)
    w = parametric_first_level(ring, f, 2, 2, ("mu1",))
    assert w.field.get(E(0, 0)) == RatFn.var(ct, "mu1")
    with pytest.raises(NormalizationError, match="primary shift"):
        parametric_first_level(ring, evaluate(parse_expression("1 + mu1 + x1^2"), T), 2, 2, ("mu1",))
