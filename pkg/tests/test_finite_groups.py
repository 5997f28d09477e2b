from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covolcert.errors import SizeLimitExceeded
from covolcert.finite_groups import (
    Composition,
    brute_force_flag_count,
    compositions,
    is_prime_power,
    order_gl,
    order_sl,
    parabolic_index,
    parabolic_index_lower,
    parabolic_order,
)


@pytest.mark.parametrize("n,q,order", [(2, 2, 6), (2, 3, 24), (3, 2, 168), (2, 4, 60), (4, 2, 20160), (2, 5, 120)])
def test_order_sl(n, q, order):
    assert order_sl(n, q) == order


def test_order_gl():
    assert order_gl(2, 2) == 6 and order_gl(2, 3) == 48


def test_compositions_count():
    for n in range(1, 9):
        cs = list(compositions(n))
        assert len(cs) == 2 ** (n - 1) and len(set(cs)) == len(cs)
        assert all(c.n == n for c in cs)


def test_examples():
    assert parabolic_index(Composition((2, 1)), 2) == 7
    assert parabolic_index(Composition.borel(4), 2) == 315
    assert parabolic_index(Composition((2, 2)), 2) == 35
    assert parabolic_index(Composition((4,)), 3) == 1


def test_parse_and_str():
    c = Composition.parse("(2,1,1)")
    assert c.parts == (2, 1, 1) and str(c) == "(2,1,1)" and c.reversed().parts == (1, 1, 2)


def test_bad_inputs():
    with pytest.raises(ValueError):
        Composition((0, 2))
    with pytest.raises(ValueError):
        parabolic_index(Composition((1, 1)), 6)
    with pytest.raises(ValueError):
        brute_force_flag_count(Composition((1, 1)), 4)
    with pytest.raises(SizeLimitExceeded):
        brute_force_flag_count(Composition((2, 2)), 5)


def test_prime_power():
    assert [q for q in range(2, 30) if is_prime_power(q)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("q", [2, 3])
def test_brute_force_agrees(n, q):
    for c in compositions(n):
        assert parabolic_index(c, q) == brute_force_flag_count(c, q)


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_order_identity_and_lower_bound(n, q):
    for c in compositions(n):
        idx = parabolic_index(c, q)
        assert idx * parabolic_order(c, q) == order_sl(n, q)
        assert idx >= parabolic_index_lower(c, q)
        if c.proper:
            assert parabolic_index_lower(c, q) >= q ** (n - 1)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.sampled_from([2, 3, 4, 5, 7]))
def test_index_invariant_under_reversal(parts, q):
    c = Composition(tuple(parts))
    assert parabolic_index(c, q) == parabolic_index(c.reversed(), q)
