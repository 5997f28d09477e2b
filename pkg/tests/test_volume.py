from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import agrees
from covolcert.errors import InconsistentInput, InconsistentLocalCase
from covolcert.rigor import Interval, v_n
from covolcert.volume import (
    CaseParams,
    DiscriminantData,
    Form,
    LocalCase,
    LocalKind,
    covolume_slnz,
    euler_factor_lower_bound,
    euler_factor_split_hyperspecial,
    ntilde,
    prasad_volume_bound,
    s_qs,
)


@pytest.mark.parametrize("n", range(2, 13))
def test_v_n(oracle, n):
    assert agrees(v_n(n).to_interval(128), oracle["V"][str(n)])


@pytest.mark.parametrize("n", range(2, 9))
def test_covolume_sl_n_z(oracle, n):
    assert agrees(covolume_slnz(n, 128), oracle["covolume"][str(n)])


def test_ntilde():
    assert [ntilde(n) for n in range(2, 8)] == [2, 1, 2, 1, 2, 1]


@pytest.mark.parametrize("n,s", [(3, 5), (4, 5), (5, 14), (6, 14), (7, 27)])
def test_s_outer(n, s):
    assert s_qs(n, Form.OUTER) == s
    assert s_qs(n, "inner") == 0


def test_s_lower_bound_quadratic():
    for n in range(3, 30):
        assert 2 * s_qs(n, Form.OUTER) >= n * n - n - 2


def test_euler_factor_split():
    assert euler_factor_split_hyperspecial(2, 2) == Fraction(4, 3)
    assert euler_factor_split_hyperspecial(3, 2) == Fraction(4, 3) * Fraction(8, 7)


def test_local_factor_kinds():
    assert euler_factor_lower_bound(LocalCase(2, 2, 2, LocalKind.T_PLACE), 4) == Interval(Fraction(1, 4) * 2**3)
    assert euler_factor_lower_bound(LocalCase(2, 3, 1, "nonspecial_split"), 3) == Interval(Fraction(4, 3))
    assert euler_factor_lower_bound(LocalCase(3, 4, 1, "nonspecial_nonsplit"), 4) == Interval(Fraction(27, 8))
    assert euler_factor_lower_bound(LocalCase(5, 4, 1, "special"), 4) == Interval(1)


def test_local_case_validation():
    with pytest.raises(InconsistentLocalCase):
        LocalCase(2, 4, 1, LocalKind.T_PLACE)
    with pytest.raises(InconsistentLocalCase):
        LocalCase(1, 4, 1, LocalKind.SPECIAL)
    with pytest.raises(InconsistentLocalCase):
        euler_factor_lower_bound(LocalCase(2, 2, 2, LocalKind.T_PLACE), 5)


def test_discriminant_data():
    dd = DiscriminantData.for_form(5, 275, Form.OUTER)
    assert dd.rel_norm == 11
    with pytest.raises(InconsistentInput):
        DiscriminantData.for_form(5, 11, Form.OUTER)


def test_prasad_volume_over_q_equals_covolume():
    cp = CaseParams(1, 3, Form.INNER)
    dd = DiscriminantData(1, 1, 1)
    from covolcert.rigor import zeta_product_bound

    vol = prasad_volume_bound(cp, dd, zeta_product_bound(3, 128), 128)
    assert vol.subset_of(covolume_slnz(3, 64)) or covolume_slnz(3, 128).subset_of(vol.outward(64))


def test_prasad_volume_inconsistent():
    with pytest.raises(InconsistentInput):
        prasad_volume_bound(CaseParams(1, 3, "inner"), DiscriminantData(5, 5, 1), Interval(1))
    with pytest.raises(InconsistentInput):
        prasad_volume_bound(CaseParams(2, 3, "outer"), DiscriminantData(5, 275, 10), Interval(1))
