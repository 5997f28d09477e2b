from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

from covolcert.field_data import load_reference_snapshot

ORACLE = json.loads((Path(__file__).parent / "oracle_values.json").read_text())
REL_TOL = Fraction(1, 10**30)


def agrees(enclosure, oracle: str, rel: Fraction = REL_TOL) -> bool:
    """The enclosure is tight and meets the 40-digit oracle value up to ``rel``."""
    x = Fraction(oracle)
    slack = abs(x) * rel
    tight = enclosure.hi - enclosure.lo <= slack
    return tight and enclosure.lo - slack <= x <= enclosure.hi + slack


@pytest.fixture(scope="session")
def oracle():
    return ORACLE


@pytest.fixture(scope="session")
def snapshot():
    return load_reference_snapshot()


# Lines recorded by test_acceptance.py, printed after the run.
CRITERIA: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[k])
