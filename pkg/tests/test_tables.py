from __future__ import annotations

from fractions import Fraction

import pytest

from covolcert.errors import MissingSnapshot
from covolcert.tables import TABLE_IDS, compute_table, format_like, last_place, render


def test_last_place_and_format():
    assert last_place("0.0364756") == Fraction(1, 10**7)
    assert last_place("774473.") == 1
    assert last_place("1.63315e-6") == Fraction(1, 10**11)
    assert format_like(Fraction(7744734, 10), "774473.") == "774473."
    assert format_like(Fraction(163315, 10**11), "1.63315e-6") == "1.63315e-6"


@pytest.mark.parametrize("tid", TABLE_IDS)
def test_every_cell_matches(snapshot, tid):
    t = compute_table(tid, snapshot)
    assert t.cells and t.all_match, [(c.key, c.rendered, c.printed) for c in t.mismatches()]


def test_examples():
    assert compute_table("A6").cell(4, 4).rendered == "1741.42"
    assert compute_table("A3").cell(2, 1).rendered == "0.0364756"


def test_snapshot_required():
    with pytest.raises(MissingSnapshot):
        compute_table("A7")
    with pytest.raises(MissingSnapshot):
        compute_table("A8")
    assert compute_table("A8", keys=[(5,)]).all_match


def test_render_formats():
    t = compute_table("A5", keys=[(4, 6)])
    assert "6.73878" in render(t) and "yes" in render(t)
    assert render(t, "csv").splitlines()[1].startswith("4,6,6.73878,6.73878")
