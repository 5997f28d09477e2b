"""Lower bounds for discriminants: Minkowski's bound and configured Odlyzko rows."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import factorial
from pathlib import Path

from covolcert.rigor import Interval, as_precision, exp, to_fraction, working_precision
from covolcert.rigor.interval import PrecisionLike


@dataclass(frozen=True)
class OdlyzkoRow:
    """Constants of one row: |disc| > a_real^r1 * a_complex^(2 r2) * exp(-e_const).

    ``a_complex`` applies once per complex embedding, i.e. twice per complex place.
    """

    name: str
    a_real: Fraction
    a_complex: Fraction
    e_const: Fraction
    citation: str

    def __post_init__(self) -> None:
        for attr in ("a_real", "a_complex", "e_const"):
            v = to_fraction(getattr(self, attr))
            if v <= 0:
                raise ValueError(f"{attr} must be positive")
            object.__setattr__(self, attr, v)


def load_odlyzko_rows(path: str | Path | None = None) -> dict[str, OdlyzkoRow]:
    """Read rows from a JSON file (default: the packaged configuration)."""
    if path is None:
        text = resources.files("covolcert.data").joinpath("odlyzko.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    data = json.loads(text)
    rows = {}
    for r in data["rows"]:
        row = OdlyzkoRow(r["name"], r["a_real"], r["a_complex"], r["e_const"], r["citation"])
        if row.name in rows:
            raise ValueError(f"duplicate Odlyzko row {row.name}")
        rows[row.name] = row
    return rows


_ROWS: dict[str, OdlyzkoRow] | None = None


def odlyzko_row(name: str) -> OdlyzkoRow:
    global _ROWS
    if _ROWS is None:
        _ROWS = load_odlyzko_rows()
    return _ROWS[name]


def minkowski_disc_lower(m: int) -> Fraction:
    """(m^m/m!)^2, a lower bound for the discriminant of any totally real field of degree m."""
    if m < 1:
        raise ValueError("m >= 1")
    return Fraction(m**m, factorial(m)) ** 2


def odlyzko_disc_lower(
    row: OdlyzkoRow, r1: int, r2: int, h: "Interval | int | Fraction | None" = None, p: PrecisionLike = None
) -> Interval:
    """Enclosure of a_real^r1 a_complex^(2 r2) exp(-e_const/h).

    With ``h`` given, this is the bound on D_l = D_L^(1/h) obtained by applying
    the row to the Hilbert class field L of degree h [l:Q].
    """
    prec = as_precision(p)
    w = prec.bits + 32
    with working_precision(w):
        val = Interval(row.a_real) ** r1 * Interval(row.a_complex) ** (2 * r2)
        arg = Interval(-row.e_const)
        if h is not None:
            arg = arg / h
        val = val * exp(arg, w)
    return val.outward(prec)


__all__ = [
    "OdlyzkoRow",
    "load_odlyzko_rows",
    "minkowski_disc_lower",
    "odlyzko_disc_lower",
    "odlyzko_row",
]
