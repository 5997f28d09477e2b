from __future__ import annotations

import json
from fractions import Fraction

import pytest

from covolcert.certificate import (
    Certificate,
    Relation,
    Status,
    axiom_step,
    combine,
    compare,
    data_step,
    decide,
    derived_step,
    numeric_step,
    precision_cap,
)
from covolcert.rigor import Interval, enclose_pi, sqrt


def test_compare_strict_needs_separation():
    assert compare(Interval(1, 2), Interval(3), Relation.LT) is True
    assert compare(Interval(1, 3), Interval(3), Relation.LT) is None
    assert compare(Interval(3), Interval(3), Relation.LT) is False
    assert compare(Interval(3), Interval(3), Relation.LE) is True
    assert compare(Interval(2), Interval(2), Relation.EQ) is True


def test_decide_raises_precision_until_separated():
    # pi < 355/113 needs about 24 bits of pi beyond the integer part
    d = decide(lambda w: (enclose_pi(w), Fraction(355, 113)), Relation.LT, start=8)
    assert d.status is Status.VERIFIED and d.bits > 8


def test_decide_undecided_at_cap():
    d = decide(lambda w: (sqrt(2, w) * sqrt(2, w), 2), Relation.LT, cap=256)
    assert d.status is Status.UNDECIDED and d.bits == 256


def test_decide_failed():
    assert decide(lambda w: (enclose_pi(w), 3), Relation.LT).status is Status.FAILED


def test_precision_cap_context():
    with precision_cap(128):
        s = numeric_step("x", "sqrt2^2 < 2", Relation.LT, lambda w: (sqrt(2, w) ** 2, 2), "r")
    assert s.status is Status.UNDECIDED and s.bits == 128


def test_data_step_statuses():
    assert data_step("a", "", "=", 1, 1, True, True, "r").status is Status.DATA_VERIFIED
    assert data_step("a", "", "=", 1, 2, False, True, "r").status is Status.FAILED
    assert data_step("a", "", "=", 1, 1, True, False, "r").status is Status.DATA_UNVERIFIED


def test_combine_weakest():
    assert combine([Status.VERIFIED, Status.AXIOM]) is Status.VERIFIED
    assert combine([Status.VERIFIED, Status.DATA_VERIFIED]) is Status.DATA_VERIFIED
    assert combine([Status.DATA_UNVERIFIED, Status.UNDECIDED, Status.FAILED]) is Status.FAILED


def _small_certificate(bad: bool = False) -> Certificate:
    a = axiom_step("ax", "a reduction", "r")
    n = numeric_step("num", "3 < pi", Relation.LT, lambda w: (4 if bad else 3, enclose_pi(w)), "r", ("ax",))
    d = derived_step("end", "done", "r", ["ax", "num"], [a, n])
    return Certificate((a, n, d), "sha256:0")


def test_certificate_roundtrip_jsonl():
    c = _small_certificate()
    lines = [json.loads(x) for x in c.dumps().splitlines()]
    assert lines[0]["format"] == "covolcert-certificate"
    assert [x["id"] for x in lines[1:-1]] == ["ax", "num", "end"]
    assert lines[-1]["concluded"] is True


def test_certificate_withholds_on_failure():
    c = _small_certificate(bad=True)
    assert not c.concluded and c.conclusion.startswith("withheld")
    assert c.step("end").status is Status.FAILED


def test_certificate_rejects_forward_references():
    a = axiom_step("a", "", "r", inputs=("b",))
    with pytest.raises(ValueError):
        Certificate((a,), "x")


def test_recheck_nests():
    s = numeric_step("p", "3 < pi", Relation.LT, lambda w: (3, enclose_pi(w)), "r")
    d = s.recheck(4 * s.bits)
    assert d.status is Status.VERIFIED and d.rhs.subset_of(s.rhs)
