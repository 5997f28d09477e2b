from __future__ import annotations

import json

import pytest

from covolcert.errors import DuplicateLabel, NoData, ParseError, SchemaError
from covolcert.field_data import (
    Certainty,
    FieldRecord,
    empty_snapshot,
    fingerprint,
    loads,
    min_disc,
    quadratic_extension_candidates,
    quadratic_extensions_of_totally_real,
    query_window,
    relative_norm,
)

TR_MIN = {1: 1, 2: 5, 3: 49, 4: 725, 5: 14641, 6: 300125, 7: 20134393, 8: 282300416}


@pytest.mark.parametrize("m", range(1, 9))
def test_min_disc_totally_real(snapshot, m):
    r = min_disc(snapshot, m, m, 0)
    assert r.value == TR_MIN[m] and r.certainty is Certainty.CERTAIN


def test_min_disc_mixed_signatures(snapshot):
    assert min_disc(snapshot, 4, 2, 1).value == 275
    assert min_disc(snapshot, 6, 2, 2).value == 28037
    assert min_disc(snapshot, 8, 2, 3).value == 4286875


def test_window_queries(snapshot):
    q = query_window(snapshot, 2, 2, 0, 1, 21)
    assert [r.disc_abs for r in q.records] == [5, 8, 12, 13, 17, 21]
    assert q.certainty is Certainty.CERTAIN
    q = query_window(snapshot, 3, 3, 0, 1, 194)
    assert [r.disc_abs for r in q.records] == [49, 81, 148, 169]
    with pytest.raises(ValueError):
        query_window(snapshot, 2, 2, 0, 10, 1)


def test_window_beyond_completeness_is_incomplete(snapshot):
    assert query_window(snapshot, 2, 2, 0, 1, 10**9).certainty is not Certainty.CERTAIN


def test_candidates(snapshot):
    k = snapshot.by_label("3.3.49.1")
    q = quadratic_extension_candidates(snapshot, k, 155)
    assert sorted(relative_norm(r, k) for r in q.records) == [13, 29, 41, 64, 97, 113]
    assert q.certainty is Certainty.CERTAIN
    assert all(r.class_number == 1 for r in q.records)
    k5 = snapshot.by_label("2.2.5.1")
    q = quadratic_extension_candidates(snapshot, k5, 214)
    assert len(q.records) == 23 and min(relative_norm(r, k5) for r in q.records) == 11


def test_candidates_of_unknown_base_are_not_certain(snapshot):
    rec = FieldRecord("4.2.999.1", 4, 2, 1, 999, -1, 1, "test", base_labels=None)
    s = loads(snapshot.to_jsonl() + json.dumps(rec.to_dict()) + "\n")
    q = quadratic_extension_candidates(s, s.by_label("2.2.5.1"), 10**6)
    assert q.certainty is not Certainty.CERTAIN


def test_quadratic_extensions_of_totally_real(snapshot):
    q = quadratic_extensions_of_totally_real(snapshot, 2, 13643)
    assert q.certainty is Certainty.CERTAIN and {r.class_number for r in q.records} <= {1, 2}


def test_schema_errors():
    good = FieldRecord("2.2.5.1", 2, 2, 0, 5, 1, 1, "x").to_dict()
    with pytest.raises(SchemaError):
        FieldRecord("2.0.3.1", 2, 1, 1, 3, 1, 1, "x")
    with pytest.raises(ParseError):
        loads("{not json\n")
    with pytest.raises(SchemaError):
        loads(json.dumps(good) + "\n")
    header = json.dumps({"format": "covolcert-snapshot", "schema_version": 1, "completeness": []})
    with pytest.raises(DuplicateLabel):
        loads(header + "\n" + json.dumps(good) + "\n" + json.dumps(good) + "\n")


def test_empty_snapshot():
    s = empty_snapshot()
    with pytest.raises(NoData):
        min_disc(s, 2, 2, 0)
    assert query_window(s, 2, 2, 0, 1, 10).certainty is not Certainty.CERTAIN


def test_fingerprint_roundtrip(snapshot):
    again = loads(snapshot.to_jsonl())
    assert len(again.records) == len(snapshot.records)
    assert fingerprint(b"").startswith("sha256:")
