from __future__ import annotations

import pytest

from covolcert.certificate import Relation, Status
from covolcert.elimination import (
    REF_ANCHORS,
    Ledger,
    case_hyperspecial,
    case_inner_nonsplit_l,
    case_n3,
    case_outer_small,
    certify_all,
    disc_window,
    eliminate,
    exclude_outer_large,
    verify_lemmas,
)
from covolcert.errors import NoData


@pytest.fixture(scope="module")
def certificate(snapshot):
    return certify_all(snapshot=snapshot)


def test_certificate_concludes(certificate):
    assert certificate.concluded
    assert certificate.count(Status.FAILED) == 0 and certificate.count(Status.UNDECIDED) == 0


def test_refs_are_described(certificate):
    assert {s.ref for s in certificate} <= set(REF_ANCHORS)


def test_inputs_precede_steps(certificate):
    seen = set()
    for s in certificate:
        assert set(s.inputs) <= seen
        seen.add(s.id)


def test_numeric_steps_have_evaluators(certificate):
    for s in certificate:
        if s.relation in (Relation.LT, Relation.LE) and s.bits is not None:
            assert s.evaluator is not None


@pytest.mark.parametrize("m,n,lo,hi,discs", [
    (5, 4, 14641, 15627, [14641]),
    (4, 4, 725, 1741, [725, 1125, 1600]),
    (3, 4, 49, 194, [49, 81, 148, 169]),
    (2, 4, 5, 21, [5, 8, 12, 13, 17, 21]),
    (3, 5, 49, 50, [49]),
    (2, 7, 5, 4, []),
    (4, 5, 725, 285, []),
])
def test_windows(snapshot, m, n, lo, hi, discs):
    w = disc_window(m, n, Ledger(snapshot))
    assert (w.lower, w.upper) == (lo, hi)
    assert [r.disc_abs for r in w.fields] == discs


def test_window_needs_snapshot():
    with pytest.raises(NoData):
        disc_window(2, 4, Ledger())
    with pytest.raises(ValueError):
        disc_window(6, 4, Ledger())


def test_outer_large():
    steps = exclude_outer_large()
    assert steps[-1].id == "case/outer-large" and steps[-1].status is Status.VERIFIED


def test_outer_small(snapshot):
    steps = case_outer_small(snapshot)
    assert steps[-1].status is Status.DATA_VERIFIED
    volume = [s for s in steps if s.id.startswith("outer/m") and "/volume/" in s.id]
    # 6 + 1 fields over cubic bases, 23 + 6 + 1 over quadratic ones and one quartic
    assert len(volume) == 38
    assert all(s.status is Status.VERIFIED for s in volume)


def test_outer_small_candidate_lists(snapshot):
    steps = {s.id: s for s in case_outer_small(snapshot)}
    assert steps["outer/m3/n4/D49/candidates"].lhs == 6
    assert steps["outer/m4/n4/D725/candidates"].lhs == 1
    assert steps["outer/m2/n4/D8/candidates"].lhs == 6
    assert steps["outer/m2/n4/D5/candidates"].lhs == 23
    assert "outer/m5/n4/D14641/candidates" not in steps


def test_n3(snapshot):
    steps = {s.id: s for s in case_n3(snapshot)}
    assert steps["case/outer-n3"].status is Status.DATA_VERIFIED
    assert steps["outer/n3/m2/upper"].claim.endswith("< 13644")
    assert steps["outer/n3/m3/upper"].claim.endswith("< 4578733")
    for m in range(4, 16):
        assert steps[f"outer/n3/m{m}"].status is Status.VERIFIED


def test_inner_and_hyperspecial(snapshot):
    assert case_inner_nonsplit_l(snapshot)[-1].status is Status.DATA_VERIFIED
    assert case_hyperspecial()[-1].status is Status.VERIFIED


def test_lemmas():
    steps = verify_lemmas(n_max=8)
    assert all(s.status in (Status.VERIFIED, Status.AXIOM) for s in steps)


@pytest.mark.parametrize("m,n", [(5, 4), (4, 4), (3, 5), (2, 6), (2, 8), (3, 3), (1, 4), (9, 4), (2, 11)])
def test_eliminate_pairs(snapshot, m, n):
    assert eliminate(m, n, snapshot)[-1].status.ok


def test_without_snapshot_conclusion_is_withheld():
    c = certify_all()
    assert not c.concluded
    assert c.count(Status.DATA_UNVERIFIED) > 0 and c.count(Status.FAILED) == 0
