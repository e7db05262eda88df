"""Truncated Laurent series in half-integer powers of q."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dt4.eqalg import DEFAULT_REGISTRY as REG
from dt4.qseries import (HalfQSeries, coeff_str, delta_inverse, even_projection,
                         goettsche_series, product_power, substitute_power,
                         substitute_sqrt)

from oracles import colored_counts, partition_numbers


def test_partition_number_oracle_sanity():
    assert partition_numbers(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_construction_and_window():
    f = HalfQSeries({0: 1, 1: 2}, 0, 4)
    assert f.min_exponent == 0
    assert f.truncation_order == 2
    assert f.coefficient(Fraction(1, 2)) == 2
    assert f.coefficient(1) == 0
    with pytest.raises(ValueError):
        f.coefficient(2)


def test_coefficients_view():
    f = HalfQSeries({-2: 5, 1: -1}, -2, 4)
    assert f.coefficients == {Fraction(-1): 5, Fraction(1, 2): -1}


def test_addition_respects_common_window():
    f = HalfQSeries({0: 1, 4: 7}, 0, 6)
    g = HalfQSeries({0: 2}, 0, 4)
    h = f + g
    assert h.trunc_units == 4
    assert h.coefficient(0) == 3
    with pytest.raises(ValueError):
        h.coefficient(2)


def test_subtraction_and_zero():
    f = HalfQSeries({0: 1, 2: 3}, 0, 6)
    assert not (f - f).to_json_entries()


def test_multiplication():
    # (1 - q) * (1 + q + q^2 + ...) = 1
    N = 8
    geo = HalfQSeries({2 * k: 1 for k in range(N)}, 0, 2 * N)
    one_minus_q = HalfQSeries({0: 1, 2: -1}, 0, 2 * N)
    prod = geo * one_minus_q
    assert prod.coefficient(0) == 1
    assert all(prod.coefficient(k) == 0 for k in range(1, N - 1))


def test_half_integer_multiplication():
    root = HalfQSeries({1: 1}, 1, 10)
    sq = root * root
    assert sq.coefficient(1) == 1
    assert sq.min_units == 2


def test_scale_and_shift():
    f = HalfQSeries({0: 2}, 0, 4)
    assert f.scale(Fraction(1, 2)).coefficient(0) == 1
    g = f.shift_exponent(Fraction(-1, 2))
    assert g.coefficient(Fraction(-1, 2)) == 2
    s = REG.var("s")
    h = f.scale(REG.one() / s)
    assert h.coefficient(0) == REG.const(2) / s


def test_matches_window_semantics():
    f = HalfQSeries({0: 1}, 0, 4)
    g = HalfQSeries({0: 1, 4: 9}, 0, 6)
    assert f.matches(g)  # q^2 term of g is outside the common window
    with pytest.raises(ValueError):
        f.matches(g, through=2)
    assert not f.matches(HalfQSeries({0: 2}, 0, 4))


def test_product_power_known():
    # prod (1-q^m)^-1 is the partition generating series
    f = product_power(-1, 12)
    p = partition_numbers(11)
    for k in range(12):
        assert f.coefficient(k) == p[k]
    # prod (1-q^m)^1 gives pentagonal-number signs
    g = product_power(1, 13)
    assert [g.coefficient(k) for k in range(8)] == [1, -1, -1, 0, 0, 1, 0, 1]


def test_goettsche_series_vs_convolution():
    for chi in (3, 4, 24):
        f = goettsche_series(chi, 8)
        want = colored_counts(chi, 7)
        for k in range(8):
            assert f.coefficient(k) == want[k]


def test_delta_inverse_spots():
    d = delta_inverse(5)
    want = colored_counts(24, 6)
    assert d.coefficient(-1) == 1
    for k in range(5):
        assert d.coefficient(k) == want[k + 1]
    # the classical K3 Euler numbers
    assert [d.coefficient(k) for k in range(-1, 5)] == [
        1, 24, 324, 3200, 25650, 176256]


def test_substitute_sqrt():
    d = HalfQSeries({-2: 1, 0: 24, 2: 324}, -2, 4)
    plus = substitute_sqrt(d, 1)
    minus = substitute_sqrt(d, -1)
    assert plus.coefficient(Fraction(-1, 2)) == 1
    assert minus.coefficient(Fraction(-1, 2)) == -1
    assert plus.coefficient(0) == minus.coefficient(0) == 24
    avg = (plus + minus).scale(Fraction(1, 2))
    assert avg.coefficient(Fraction(-1, 2)) == 0
    assert avg.coefficient(Fraction(1, 2)) == 0


def test_substitute_sqrt_rejects_half_exponents():
    f = HalfQSeries({1: 1}, 1, 4)
    with pytest.raises(ValueError):
        substitute_sqrt(f, 1)
    with pytest.raises(ValueError):
        substitute_sqrt(HalfQSeries({0: 1}, 0, 2), 2)


def test_substitute_power():
    f = HalfQSeries({2: 5}, 2, 6)
    g = substitute_power(f, 2)
    assert g.coefficient(2) == 5
    assert g.trunc_units == 12
    with pytest.raises(ValueError):
        substitute_power(f, 0)


def test_even_projection():
    f = HalfQSeries({-1: 1, 0: 24, 1: 324, 2: 3200}, -1, 4)
    e = even_projection(f)
    assert e.coefficient(0) == 24
    assert e.coefficient(Fraction(1, 2)) == 0
    assert e.coefficient(1) == 3200


def test_coeff_str():
    assert coeff_str(3) == "3"
    assert coeff_str(Fraction(1, 2)) == "(1)/(2)"
    assert coeff_str(Fraction(4, 2)) == "2"
    assert coeff_str(REG.one() / REG.var("s")) == "(1)/(s)"


def test_to_json_entries_sorted():
    f = HalfQSeries({2: 1, -2: 4}, -2, 4)
    entries = f.to_json_entries()
    assert entries[0] == {"exponent_num": -1, "exponent_den": 1,
                          "coefficient": "4"}
    assert entries[1]["exponent_num"] == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30))
def test_product_power_additivity(a, b):
    N = 6
    f = product_power(a, N) * product_power(b, N)
    g = product_power(a + b, N)
    assert f.matches(g, through=N - 1)


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.integers(-4, 8), st.integers(-9, 9), max_size=6))
def test_even_projection_idempotent(units):
    f = HalfQSeries(units, min(units, default=0), 10)
    e = even_projection(f)
    assert even_projection(e) == e
    assert all(u % 2 == 0 for u in e.units)
