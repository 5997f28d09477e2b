from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import agrees
from covolcert.errors import DivisionByEnclosedZero, DomainError
from covolcert.rigor import (
    INFINITY,
    Interval,
    bernoulli,
    enclose_pi,
    exp,
    log,
    pow_rational,
    round_fraction,
    sqrt,
    working_precision,
    zeta_enclosure,
    zeta_product_bound,
)

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
positive = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=10**6)


def iv(a, b):
    return Interval(min(a, b), max(a, b))


def test_pi_encloses_oracle(oracle):
    assert agrees(enclose_pi(128), oracle["pi"])


def test_pi_low_precision_contains_true_value():
    p = enclose_pi(8)
    assert p.lo <= Fraction(314159, 100000) and Fraction(314160, 100000) <= p.hi
    assert p.hi - p.lo < Fraction(1, 16)


@pytest.mark.parametrize("s", range(2, 10))
def test_zeta_matches_oracle(oracle, s):
    assert agrees(zeta_enclosure(s, 128), oracle["zeta"][str(s)])


def test_zeta_rejects_pole():
    with pytest.raises(ValueError):
        zeta_enclosure(1)


def test_bernoulli_values():
    assert [bernoulli(k) for k in (0, 1, 2, 4, 6)] == [1, Fraction(1, 2), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)]


def test_zeta_product_infinite_bound(oracle):
    b = zeta_product_bound(INFINITY, 128)
    true = Fraction(oracle["prodzeta"])
    assert b.lo <= true <= b.hi
    assert b.hi < Fraction(23, 10)


def test_zeta_product_finite_is_monotone():
    values = [zeta_product_bound(n, 96) for n in range(2, 9)]
    assert all(a.hi < b.lo for a, b in zip(values, values[1:]))


def test_sqrt8(oracle):
    r = sqrt(8, 128)
    assert r.lo * r.lo <= 8 <= r.hi * r.hi
    assert r.hi - r.lo < Fraction(1, 2**120)


def test_exp_log_roundtrip():
    x = Fraction(7, 3)
    y = log(exp(x, 128), 128)
    assert y.contains(x)


def test_log_domain_error():
    with pytest.raises(DomainError):
        log(Interval(-1, 2))


def test_division_by_enclosed_zero():
    with pytest.raises(DivisionByEnclosedZero):
        Interval(1) / Interval(-1, 1)


def test_pow_rational_exact_root():
    assert pow_rational(27, Fraction(2, 3), 64).contains(9)


def test_round_fraction_directed():
    x = Fraction(1, 3)
    assert round_fraction(x, 10, up=False) <= x <= round_fraction(x, 10, up=True)


def test_exact_operands_stay_exact():
    with working_precision(32):
        a = Interval(1) / 3
    assert a.is_exact and a.lo == Fraction(1, 3)


def test_rounding_follows_precision_context():
    x = Interval(1, Fraction(10**9 + 1, 10**9))
    with working_precision(32):
        a = x / 3
    with working_precision(256):
        b = x / 3
    assert a.contains(Fraction(1, 3)) and b.subset_of(a)
    assert a.lo.denominator.bit_length() <= 64


@settings(max_examples=200, deadline=None)
@given(fractions, fractions, fractions, fractions)
def test_add_mul_contain_point_results(a, b, c, d):
    x, y = iv(a, b), iv(c, d)
    for p in (a, b):
        for q in (c, d):
            assert (x + y).contains(p + q)
            assert (x * y).contains(p * q)
            assert (x - y).contains(p - q)


@settings(max_examples=100, deadline=None)
@given(positive, positive)
def test_division_contains_quotient(a, b):
    with working_precision(40):
        assert (Interval(a) / Interval(b)).contains(a / b)


@settings(max_examples=60, deadline=None)
@given(positive, st.fractions(min_value=-3, max_value=3, max_denominator=12))
def test_pow_rational_monotone_in_precision(x, e):
    lo, hi = pow_rational(x, e, 48), pow_rational(x, e, 192)
    assert hi.subset_of(lo)


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=1000))
def test_exp_positive_and_nested(x):
    a, b = exp(x, 40), exp(x, 160)
    assert a.lo > 0 and b.subset_of(a)
