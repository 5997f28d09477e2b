"""Acceptance criteria 1 to 7; each test records one PASS/FAIL line printed after the run."""

from __future__ import annotations

import json
import random
import time
from decimal import ROUND_CEILING, Decimal
from fractions import Fraction
from math import floor

from conftest import CRITERIA
from covolcert.bounds import Grid, fn_Mprime, fn_N, fn_Nprime, rel_disc_bound, verify_monotonicity, zeta23
from covolcert.certificate import Relation, Status
from covolcert.cli import main
from covolcert.elimination import Ledger, certify_all, disc_window
from covolcert.field_data import FieldRecord, loads
from covolcert.finite_groups import (
    brute_force_flag_count,
    compositions,
    parabolic_index,
    parabolic_index_lower,
)
from covolcert.rigor import INFINITY, zeta_product_bound
from covolcert.tables import compute_table, published


def record(k: int, ok: bool, detail: str) -> None:
    CRITERIA[k] = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"


def test_criterion_1_tables():
    record(1, False, "table reproduction")
    t0 = time.perf_counter()
    cells = mismatched = 0
    for tid, m_min in [("A3", None), ("A5", None), ("A6", None), ("A8", 5), ("A9", 5)]:
        keys = None if m_min is None else [k for k in published()[tid] if k[0] >= m_min]
        table = compute_table(tid, keys=keys)
        cells += len(table.cells)
        mismatched += len(table.mismatches())
    elapsed = time.perf_counter() - t0
    assert mismatched == 0
    assert elapsed < 10
    record(1, True, f"{cells} printed cells of A3, A5, A6, A8 (m >= 5), A9 (m >= 5) match; {elapsed:.1f} s")


def test_criterion_2_constants():
    record(2, False, "constants")
    prod = zeta_product_bound(INFINITY, 128)
    z23 = zeta23(128)
    n4, np4, mp163 = fn_N(4, 128), fn_Nprime(4, 128), fn_Mprime(16, 3, 128)
    assert prod.hi < Fraction("2.3")
    assert z23.hi < Fraction("1.97731")
    assert n4.lo > Fraction("2.3")
    assert Fraction("3.49385") - Fraction(1, 10**5) <= np4.lo and np4.hi <= Fraction("3.49385") + Fraction(1, 10**5)
    assert Fraction("4.6751") - Fraction(1, 10**3) <= mp163.lo and mp163.hi <= Fraction("4.6751") + Fraction(1, 10**3)
    record(2, True, f"prod zeta < {float(prod.hi):.6f} < 2.3; zeta(2)zeta(3) < {float(z23.hi):.7f}; "
                    f"N(4) > {float(n4.lo):.5f}; N'(4) = {float(np4):.6f}; M'(16,3) = {float(mp163):.5f}")


def test_criterion_3_finite_groups():
    record(3, False, "finite-group oracle")
    t0 = time.perf_counter()
    pairs = 0
    for n in (2, 3, 4):
        for q in (2, 3):
            for c in compositions(n):
                assert parabolic_index(c, q) == brute_force_flag_count(c, q)
                pairs += 1
    bounds = 0
    for n in range(1, 9):
        for q in (2, 3, 4, 5, 7, 8, 9):
            for c in compositions(n):
                lower = parabolic_index_lower(c, q)
                assert parabolic_index(c, q) >= lower
                if c.proper:
                    assert lower >= q ** (n - 1)
                bounds += 1
    elapsed = time.perf_counter() - t0
    assert pairs == 28
    assert elapsed < 120
    record(3, True, f"{pairs} composition-q pairs equal brute force (every composition of n = 2, 3, 4 with q = 2, 3); "
                    f"{bounds} lower-bound checks; {elapsed:.1f} s")


def test_criterion_4_monotonicity():
    record(4, False, "monotonicity")
    total = proofs = 0
    for which in ("E1", "E2", "M", "Mprime", "N", "Nprime"):
        steps = verify_monotonicity(which, Grid.up_to(which, 20, 20, 20))
        assert all(s.status in (Status.VERIFIED, Status.AXIOM) for s in steps), which
        total += len(steps)
        proofs += sum(1 for s in steps if s.critical)
    base = [s for s in verify_monotonicity("M", Grid()) if "cross" in s.id and s.status is Status.VERIFIED]
    assert base, "the (9/16 pi)(81/16 pi)^4 > 1 base case"
    record(4, True, f"{proofs} proof steps and {total - proofs} grid steps (m, n, q <= 20) verified")


def _ceil3(x: Fraction) -> str:
    return str((Decimal(x.numerator) / Decimal(x.denominator)).quantize(Decimal("0.001"), ROUND_CEILING))


def test_criterion_5_case_chain(snapshot, tmp_path, monkeypatch):
    record(5, False, "case chain")
    t0 = time.perf_counter()
    for m, n, window in [(5, 4, (14641, 15627)), (4, 4, (725, 1741)), (3, 4, (49, 194)), (2, 4, (5, 21))]:
        w = disc_window(m, n, Ledger(snapshot))
        assert (w.lower, w.upper) == window
    decimals = {(5, 4, 14641): "1.271", (4, 4, 1600): "1.365", (3, 4, 169): "1.661"}
    for (m, n, dk), printed in decimals.items():
        assert _ceil3(rel_disc_bound(m, n, dk, 128).hi) == printed
    integers = {(3, 4, 148): 2, (3, 4, 81): 24, (3, 4, 49): 155,
                (2, 4, 5): 214, (2, 4, 8): 38, (2, 4, 12): 8, (2, 4, 13): 6, (2, 4, 17): 2, (2, 4, 21): 1}
    for (m, n, dk), printed in integers.items():
        b = rel_disc_bound(m, n, dk, 128)
        assert floor(b.lo) == floor(b.hi) == printed
    cert = certify_all(snapshot=snapshot)
    cases = [s for s in cert if s.id.startswith("case/")]
    assert cases and all(s.status.ok for s in cases)
    for case in ("case/outer-small", "case/outer-n3", "case/inner-nonsplit", "case/hyperspecial"):
        assert cert.step(case).status.ok
    monkeypatch.setenv("COVOL_SNAPSHOT", "reference")
    out = tmp_path / "certificate.jsonl"
    assert main(["certify", "--format", "step-records", "--out", str(out)]) == 0
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    statuses = [x["status"] for x in lines[1:-1]]
    assert "Failed" not in statuses and "Undecided" not in statuses
    elapsed = time.perf_counter() - t0
    assert elapsed < 60
    record(5, True, f"windows and relative bounds match; {len(cases)} case steps eliminated; "
                    f"certify exit 0 with {len(statuses)} steps, none Failed or Undecided; {elapsed:.1f} s")


def test_criterion_6_tampered_snapshot(snapshot):
    record(6, False, "tampered snapshot")
    fake = FieldRecord("4.2.50.1", 4, 2, 1, 50, -1, 1, "fabricated", base_labels=("2.2.5.1",))
    tampered = loads(snapshot.to_jsonl() + json.dumps(fake.to_dict()) + "\n")
    honest = certify_all(snapshot=snapshot)
    cert = certify_all(snapshot=tampered)
    assert honest.concluded
    assert not cert.concluded and cert.conclusion.startswith("withheld")
    record(6, True, f"fabricated field 4.2.50.1 over 2.2.5.1 flips the conclusion: {cert.conclusion}")


def test_criterion_7_soundness_recheck(snapshot):
    record(7, False, "soundness recheck")
    cert = certify_all(snapshot=snapshot)
    pool = [s for s in cert if s.status is Status.VERIFIED and s.relation is Relation.LT and s.evaluator is not None
            and not s.lhs.is_exact and not s.rhs.is_exact]
    chosen = random.Random(20261015).sample(pool, 3)
    for s in chosen:
        d = s.recheck(4 * s.bits)
        assert d.status is Status.VERIFIED
        assert d.lhs.subset_of(s.lhs) and d.rhs.subset_of(s.rhs)
        assert d.lhs.width() < s.lhs.width() and d.rhs.width() < s.rhs.width()
    record(7, True, f"3 of {len(pool)} strict steps rechecked at 4x precision, verdict kept, enclosures nested: "
                    + ", ".join(s.id for s in chosen))
