from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ORACLE, agrees
from covolcert.bounds import (
    Grid,
    class_number_upper,
    dirichlet_units_bound,
    fn_C,
    fn_E1,
    fn_E2,
    fn_H,
    fn_M,
    fn_Mprime,
    fn_N,
    fn_Nprime,
    hilbert_cf_disc_bound,
    index_bound_inner,
    index_bound_outer,
    load_odlyzko_rows,
    minkowski_disc_lower,
    odlyzko_disc_lower,
    odlyzko_row,
    rel_disc_bound,
    verify_monotonicity,
)
from covolcert.certificate import Status
from covolcert.errors import MissingDiscriminantOverride, SExponentDegenerate


def _pairs(table):
    return [tuple(int(x) for x in k.split(",")) for k in ORACLE[table]]


@pytest.mark.parametrize("m,n", _pairs("M"))
def test_M_oracle(oracle, m, n):
    assert agrees(fn_M(m, n, 128), oracle["M"][f"{m},{n}"])


@pytest.mark.parametrize("m,n", _pairs("Mprime"))
def test_Mprime_oracle(oracle, m, n):
    assert agrees(fn_Mprime(m, n, 128), oracle["Mprime"][f"{m},{n}"])


@pytest.mark.parametrize("m,n", _pairs("C"))
def test_C_oracle(oracle, m, n):
    assert agrees(fn_C(m, n, 128), oracle["C"][f"{m},{n}"])


@pytest.mark.parametrize("n", range(2, 13))
def test_N_and_Nprime_oracle(oracle, n):
    assert agrees(fn_N(n, 128), oracle["N"][str(n)])
    assert agrees(fn_Nprime(n, 128), oracle["Nprime"][str(n)])


@pytest.mark.parametrize("key", sorted(ORACLE["Brel"]))
def test_rel_disc_bound_oracle(oracle, key):
    m, n, dk = map(int, key.split(","))
    assert agrees(rel_disc_bound(m, n, dk, 128), oracle["Brel"][key])


@pytest.mark.parametrize("key", sorted(ORACLE["Brel_refined"]))
def test_refined_rel_disc_bound_oracle(oracle, key):
    m, n, dk = map(int, key.split(","))
    assert agrees(rel_disc_bound(m, n, dk, 128, refined=True), oracle["Brel_refined"][key])


def test_rel_disc_bound_degenerate_s():
    with pytest.raises(SExponentDegenerate):
        rel_disc_bound(2, 2, 5)


@pytest.mark.parametrize("m", range(5, 16))
def test_H_and_hilbert_oracle(oracle, m):
    h = fn_H(m, 128)
    assert agrees(h, oracle["H"][str(m)])
    assert agrees(hilbert_cf_disc_bound(m, h, 128), oracle["hilbert_at_H"][str(m)], Fraction(1, 10**25))


@pytest.mark.parametrize("key", sorted(ORACLE["H_min"]))
def test_H_with_minimal_discriminant(oracle, key):
    m, d = map(int, key.split(","))
    assert agrees(fn_H(m, 128, d), oracle["H_min"][key])


def test_H_small_m_needs_discriminant():
    with pytest.raises(MissingDiscriminantOverride):
        fn_H(3)


def test_E_functions():
    assert fn_E1(4, 2, 4, 64).contains(2)
    assert fn_E1(3, 2, 3, 64).contains(Fraction(4, 3))
    assert fn_E2(4, 3) == fn_E2(4, 3) and fn_E2(3, 2).lo == Fraction(4, 3)


def test_class_number_upper_is_positive():
    assert class_number_upper(4, 725 * 725 * 11, 64).lo > 1


def test_odlyzko_rows_and_bounds():
    rows = load_odlyzko_rows()
    assert set(rows) == {"totally-real", "class-number-lower", "hilbert-class-field"}
    tr = odlyzko_row("totally-real")
    # the smallest quintic discriminant is above the bound
    assert odlyzko_disc_lower(tr, 5, 0, None, 64).hi < 14641
    assert minkowski_disc_lower(2) == 4
    # the degree 10 signature (2,4) bound over D_k^2 exceeds 2
    assert (odlyzko_disc_lower(tr, 2, 4, None, 64) / 14641**2).lo > 2


def test_index_bounds():
    assert index_bound_inner(1, 4, 1) == 2
    assert index_bound_inner(2, 3, 2, (3,)) == 2 * 1 * 3 * 3
    assert index_bound_outer(1, 4, 2) == 4 * 4
    assert index_bound_outer(1, 4, 1, k_is_Q=True) == 16
    assert dirichlet_units_bound(4, 3, 1, 1, 1, True) == 4
    assert dirichlet_units_bound(4, 3, 1, 1, 1, False) == 16


@pytest.mark.parametrize("which", ["E1", "E2", "M", "Mprime", "N", "Nprime"])
def test_monotonicity_proofs_and_grids(which):
    steps = verify_monotonicity(which)
    assert steps
    assert all(s.status in (Status.VERIFIED, Status.AXIOM) for s in steps)
    assert all(s.id.startswith(f"mono/{which}/") for s in steps)


def test_monotonicity_proof_only():
    steps = verify_monotonicity("M", Grid())
    assert all(s.critical for s in steps if s.status is Status.VERIFIED)


def test_monotonicity_rejects_grid_outside_domain():
    with pytest.raises(ValueError):
        verify_monotonicity("M", Grid(m=(2, 3), n=(4, 5)))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.integers(6, 12))
def test_M_increases_in_both_arguments(m, n):
    assert fn_M(m, n, 64).hi < fn_M(m + 1, n, 64).lo
    assert fn_M(m, n, 64).hi < fn_M(m, n + 1, 64).lo


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 30))
def test_N_and_Nprime_increase(n):
    assert fn_N(n, 64).hi < fn_N(n + 1, 64).lo
    assert fn_Nprime(n, 64).hi < fn_Nprime(n + 1, 64).lo
