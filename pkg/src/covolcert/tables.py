"""Computed tables of the bounding functions, compared with their published values.

Tables are indexed as ``(row, col)`` with rows ``n`` and columns ``m`` for the
two-parameter tables (A3: M, A5: M', A6: C) and rows ``m`` for the
one-parameter tables (A7: smallest totally real discriminant, A8: H(m),
A9: the Hilbert class field bound at h = H(m)).

A computed cell matches its published value when the midpoint of the
enclosure is within one unit in the last printed digit of the printed value,
and the printed value lies in the enclosure widened by that unit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable

from covolcert.bounds import fn_C, fn_H, fn_M, fn_Mprime, hilbert_cf_disc_bound
from covolcert.errors import MissingSnapshot
from covolcert.field_data import Snapshot, min_disc
from covolcert.rigor import Interval

TABLE_IDS = ("A3", "A5", "A6", "A7", "A8", "A9")
TITLES = {
    "A3": "M(m,n)",
    "A5": "M'(m,n)",
    "A6": "C(m,n)",
    "A7": "smallest discriminant of a totally real field of degree m",
    "A8": "H(m)",
    "A9": "Hilbert class field bound at h = H(m)",
}
TWO_PARAMETER = ("A3", "A5", "A6")
SNAPSHOT_M_MAX = 4   # H(m) for m <= 4 uses the smallest discriminant from the snapshot
BITS = 128


@lru_cache(maxsize=None)
def published() -> dict[str, dict[tuple[int, ...], str]]:
    """Published values keyed by ``(n, m)`` or ``(m,)``."""
    raw = json.loads(resources.files("covolcert.data").joinpath("published_tables.json").read_text())
    return {t: {tuple(int(x) for x in k.split(",")): v for k, v in cells.items()} for t, cells in raw.items()}


def last_place(printed: str) -> Fraction:
    """One unit in the last printed digit of ``printed``."""
    exponent = Decimal(printed).as_tuple().exponent
    return Fraction(10) ** exponent


def format_like(value: Fraction, printed: str) -> str:
    """Render ``value`` with the digits and style of ``printed``."""
    mantissa = printed.lower().split("e")[0]
    digits = len(mantissa.replace("-", "").replace(".", "").lstrip("0"))
    if "e" in printed.lower():
        text = f"{float(value):.{max(digits - 1, 0)}e}"
        m, e = text.split("e")
        return f"{m}e{int(e)}"
    decimals = len(mantissa.split(".")[1]) if "." in mantissa else 0
    text = f"{Decimal(value.numerator) / Decimal(value.denominator):.{decimals}f}"
    return text + "." if printed.endswith(".") else text


@dataclass(frozen=True)
class Cell:
    key: tuple[int, ...]
    enclosure: Interval
    printed: str | None

    @property
    def mid(self) -> Fraction:
        return (self.enclosure.lo + self.enclosure.hi) / 2

    @property
    def rendered(self) -> str:
        if self.printed is not None:
            return format_like(self.mid, self.printed)
        return f"{float(self.mid):.6g}"

    @property
    def match(self) -> bool | None:
        if self.printed is None:
            return None
        p, u = Fraction(Decimal(self.printed)), last_place(self.printed)
        return abs(self.mid - p) <= u and self.enclosure.lo - u <= p <= self.enclosure.hi + u


@dataclass(frozen=True)
class Table:
    id: str
    cells: tuple[Cell, ...]

    @property
    def all_match(self) -> bool:
        return all(c.match is not False for c in self.cells)

    def mismatches(self) -> list[Cell]:
        return [c for c in self.cells if c.match is False]

    def cell(self, *key: int) -> Cell:
        for c in self.cells:
            if c.key == key:
                return c
        raise KeyError(key)


def _two_parameter(fn: Callable[[int, int, int], Interval]) -> Callable[[tuple[int, ...]], Interval]:
    return lambda key: fn(key[1], key[0], BITS)


def _dl_min(snapshot: Snapshot | None, m: int) -> int:
    if snapshot is None:
        raise MissingSnapshot(f"H({m}) needs the smallest discriminant of signature (2,{m - 1})")
    return min_disc(snapshot, 2 * m, 2, m - 1).value


def _h(m: int, snapshot: Snapshot | None) -> Interval:
    if m <= SNAPSHOT_M_MAX:
        return fn_H(m, BITS, _dl_min(snapshot, m))
    return fn_H(m, BITS)


def compute_table(table_id: str, snapshot: Snapshot | None = None, keys=None) -> Table:
    """Compute every published cell of ``table_id`` (or just ``keys``).

    A7 and the m <= 4 cells of A8 and A9 need a snapshot; without one they
    raise :class:`MissingSnapshot`.
    """
    if table_id not in TABLE_IDS:
        raise ValueError(f"unknown table {table_id!r}; choose from {', '.join(TABLE_IDS)}")
    pub = published()[table_id]
    keys = sorted(pub) if keys is None else [tuple(k) for k in keys]
    if table_id == "A3":
        compute = _two_parameter(fn_M)
    elif table_id == "A5":
        compute = _two_parameter(fn_Mprime)
    elif table_id == "A6":
        compute = _two_parameter(fn_C)
    elif table_id == "A7":
        if snapshot is None:
            raise MissingSnapshot("table A7 lists snapshot minima")
        compute = lambda key: Interval(min_disc(snapshot, key[0], key[0], 0).value)  # noqa: E731
    elif table_id == "A8":
        compute = lambda key: _h(key[0], snapshot)  # noqa: E731
    else:
        compute = lambda key: hilbert_cf_disc_bound(key[0], _h(key[0], snapshot), BITS)  # noqa: E731
    return Table(table_id, tuple(Cell(k, compute(k), pub.get(k)) for k in keys))


def render(table: Table, fmt: str = "table-text") -> str:
    """Render as aligned text, or CSV with one cell per line."""
    two = table.id in TWO_PARAMETER
    if fmt == "csv":
        head = "n,m" if two else "m"
        lines = [f"{head},computed,published,lo,hi,match"]
        for c in table.cells:
            lines.append(",".join([*map(str, c.key), c.rendered, c.printed or "",
                                   f"{float(c.enclosure.lo):.12g}", f"{float(c.enclosure.hi):.12g}",
                                   "" if c.match is None else str(c.match).lower()]))
        return "\n".join(lines) + "\n"
    if fmt != "table-text":
        raise ValueError(f"unknown table format {fmt!r}")
    out = [f"Table {table.id}: {TITLES[table.id]}"]
    if two:
        out.append(f"{'n':>3} {'m':>3}  {'computed':>14}  {'published':>14}  match")
    else:
        out.append(f"{'m':>3}  {'computed':>14}  {'published':>14}  match")
    for c in table.cells:
        flag = "-" if c.match is None else ("yes" if c.match else "NO")
        key = " ".join(f"{x:>3}" for x in c.key)
        out.append(f"{key}  {c.rendered:>14}  {c.printed or '':>14}  {flag}")
    out.append(f"{sum(c.match is True for c in table.cells)}/{len(table.cells)} cells match")
    return "\n".join(out) + "\n"


__all__ = ["Cell", "TABLE_IDS", "Table", "compute_table", "format_like", "last_place", "published", "render"]
