"""Rational-function scalars, Laurent residues, weight characters."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dt4.eqalg import (DEFAULT_REGISTRY as REG, EqScalar, NonGenericWeightError,
                       Registry, WeightCharacter, chern_part,
                       euler_of_character, laurent_expand, normalize, residue)
from dt4.poly import Poly

S = REG.var("s")
SP = REG.var("sp")
E1 = REG.var("e1")
E2 = REG.var("e2")


def rationals():
    return st.fractions(min_value=-8, max_value=8, max_denominator=6)


def linear_scalars():
    """Nonzero-denominator scalars: (a + b s + c e1) / (d + e sp)."""
    c = st.integers(-4, 4)

    def build(a, b, cc, d, e):
        num = REG.const(a) + REG.const(b) * S + REG.const(cc) * E1
        den = REG.const(d) + REG.const(e) * SP
        return num, den
    return st.builds(build, c, c, c, c, c).filter(
        lambda nd: not nd[1].is_zero()).map(lambda nd: nd[0] / nd[1])


def test_registry():
    assert REG.nvars == 4
    assert REG.names == ("s", "sp", "e1", "e2")
    assert REG.index("e2") == 3
    with pytest.raises(KeyError):
        REG.index("nope")
    r = Registry("a", "b")
    assert r.var("a").num == Poly.variable(2, 0)


def test_const_accepts_fractions():
    half = REG.const(Fraction(1, 2))
    assert half + half == REG.one()
    assert str(half) == "(1)/(2)"


def test_canonical_strings():
    assert str(REG.one()) == "1"
    assert str(REG.const(-3)) == "-3"
    v = REG.one() / (REG.const(4) * S * S)
    assert str(v) == "(1)/(4*s^2)"
    assert str(S / S) == "1"


def test_canonical_form_is_unique():
    a = (S * S - E1 * E1) / (S - E1)
    assert a == S + E1
    b = (REG.const(2) * S) / REG.const(4)
    assert b == S / REG.const(2)
    assert normalize(b) == b


def test_field_operations():
    x = S / (S + E1)
    y = E1 / (S + E1)
    assert x + y == REG.one()
    assert x - x == REG.zero()
    assert (x * x.inverse()) == REG.one()
    assert x / y == S / E1
    assert (REG.one() / x) * x == REG.one()
    assert 1 + S == S + 1
    assert 2 * x == x + x
    assert 1 - x == y


def test_pow():
    assert S ** 0 == REG.one()
    assert S ** 3 == S * S * S
    assert S ** -2 == REG.one() / (S * S)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        REG.zero().inverse()


def test_specialize():
    x = (S + E1) / (S - E1)
    v = x.specialize({"s": Fraction(3), "e1": Fraction(1)})
    assert v == REG.const(2)
    partial = x.specialize({"e1": Fraction(0)})
    assert partial == REG.one()


def test_as_fraction():
    assert (REG.const(3) / REG.const(4)).as_fraction() == Fraction(3, 4)
    with pytest.raises(ValueError):
        S.as_fraction()


def test_laurent_expand_regular():
    # 1/(1 - sp) = 1 + sp + sp^2 + ...
    x = REG.one() / (REG.one() - SP)
    got = laurent_expand(x, "sp", 2)
    assert got == [(0, REG.one()), (1, REG.one()), (2, REG.one())]


def test_laurent_expand_pole():
    x = (S + SP) / (SP * SP)
    got = dict(laurent_expand(x, "sp", 0))
    assert got[-2] == S
    assert got[-1] == REG.one()
    assert 0 not in got


def test_residue_basics():
    assert residue(REG.one() / SP, "sp") == REG.one()
    assert residue(S / SP + REG.const(5) / (SP * SP), "sp") == S
    assert residue(S + SP * E1, "sp") == REG.zero()
    assert residue(REG.zero(), "sp") == REG.zero()


def test_residue_of_shifted_pole_is_zero_at_origin():
    # pole at sp = -s only; expansion around 0 is regular
    assert residue(REG.one() / (SP + S), "sp") == REG.zero()


def test_weight_character_algebra():
    c = WeightCharacter(REG, {(1, 0, 0, 0): 2, (0, 0, 1, 0): -1})
    assert c.rank() == 1
    assert (-c).weights == {(1, 0, 0, 0): -2, (0, 0, 1, 0): 1}
    d = WeightCharacter(REG, {(1, 0, 0, 0): -2})
    assert (c + d).weights == {(0, 0, 1, 0): -1}
    assert c.conjugate().weights == {(-1, 0, 0, 0): 2, (0, 0, -1, 0): -1}
    assert c.shift((0, 0, 0, 1)).weights == {(1, 0, 0, 1): 2, (0, 0, 1, 1): -1}


def test_weight_character_product():
    a = WeightCharacter(REG, {(1, 0, 0, 0): 1, (0, 1, 0, 0): 1})
    b = WeightCharacter(REG, {(0, 0, 1, 0): 1})
    assert (a * b).weights == {(1, 0, 1, 0): 1, (0, 1, 1, 0): 1}


def test_euler_of_character():
    c = WeightCharacter(REG, {(1, 0, 0, 0): 2, (0, 0, 1, 1): -1})
    assert euler_of_character(c) == S * S / (E1 + E2)
    with pytest.raises(NonGenericWeightError):
        euler_of_character(WeightCharacter(REG, {(0, 0, 0, 0): 1}))


def test_euler_of_zero_multiplicity_weight():
    c = WeightCharacter(REG, {(1, 0, 0, 0): 1})
    assert euler_of_character(c + (-c)) == REG.one()


def test_chern_part():
    c = WeightCharacter(REG, {(1, 0, 0, 0): 1, (0, 0, 1, 0): 1})
    assert chern_part(c, 0) == REG.one()
    assert chern_part(c, 1) == S + E1
    assert chern_part(c, 2) == S * E1
    # zero weights are legal in Chern classes and contribute nothing
    z = WeightCharacter(REG, {(0, 0, 0, 0): 3, (1, 0, 0, 0): 1})
    assert chern_part(z, 1) == S


def test_chern_part_negative_multiplicity():
    # (1 + s)^-1 expands as 1 - s + s^2 - ...
    c = WeightCharacter(REG, {(1, 0, 0, 0): -1})
    assert chern_part(c, 1) == -S
    assert chern_part(c, 2) == S * S


def test_chern_top_equals_euler():
    c = WeightCharacter(REG, {(1, 0, 0, 0): 1, (0, 0, 1, 0): 1, (0, 0, 0, 1): 1})
    assert chern_part(c, c.rank()) == euler_of_character(c)


@settings(max_examples=40, deadline=None)
@given(linear_scalars(), linear_scalars(), linear_scalars())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)
    if not a.is_zero():
        assert a * a.inverse() == REG.one()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), rationals()),
                min_size=1, max_size=5))
def test_residue_linearity(terms):
    # sum of c * sp^k has residue = sum of c at k = -1
    x = REG.zero()
    expected = REG.zero()
    for k, c in terms:
        x = x + REG.const(c) * SP ** k
        if k == -1:
            expected = expected + REG.const(c)
    assert residue(x, "sp") == expected
