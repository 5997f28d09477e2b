"""Regenerate the reference number-field snapshot with PARI/GP.

This script is not part of the installed package and is not needed to run the
engine or its tests.  It documents exactly how every computed record and
completeness range in ``src/covolcert/data/reference_snapshot.jsonl`` was
produced, so that the data can be audited or extended.

Requirements: ``cypari2`` (``pip install --only-binary=:all: cypari2``).

Method
------
* Totally real fields of degree 2, 3, 4 up to a bound are listed with
  ``nflist`` for every possible Galois group.
* Quartic fields of signature (2, 1) are listed the same way (groups D4, S4).
* Quadratic extensions of a fixed base field with prescribed ramification at
  infinity are obtained by class field theory: every such extension has a
  conductor whose finite part has norm bounded by the relative discriminant,
  so we walk ``ideallist`` up to the bound and take index-2 subgroups of each
  ray class group whose conductor is the full modulus.
* Every class number is computed with ``bnfinit`` and then proved with
  ``bnfcertify``, so it does not depend on GRH.

Records that are not computed here (minimal fields of higher degree) are
listed in ``LITERATURE`` with the polynomial, which is re-checked for its
discriminant, signature and class number.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

import cypari2

pari = cypari2.Pari()
pari.allocatemem(4 * 10**9)

QUADRATIC_MAX = 200
CUBIC_MAX = 2139          # every cubic with D_k^2 below the sextic window
QUARTIC_MAX = 2100
QUARTIC_21_MAX = 13643
SEXTIC_22_MAX = 4578732
# base-scoped octic searches: base discriminant -> largest relative norm
OCTIC_BASES = {725: 24, 1125: 5, 1600: 2}

LITERATURE = [
    # (polynomial, completeness bound for "all" fields of this signature, source)
    ("x^5 - x^4 - 4*x^3 + 3*x^2 + 3*x - 1", 20000,
     "tables of totally real quintic fields; smallest discriminants 14641, 24217"),
    ("x^6 - x^5 - 7*x^4 + 2*x^3 + 7*x^2 - 2*x - 1", 300125,
     "tables of totally real sextic fields; minimum 300125"),
    ("x^7 - x^6 - 6*x^5 + 4*x^4 + 10*x^3 - 4*x^2 - 4*x + 1", 20134393,
     "tables of totally real septic fields; minimum 20134393"),
    ("x^8 - 4*x^7 + 14*x^5 - 8*x^4 - 12*x^3 + 7*x^2 + 2*x - 1", 282300416,
     "tables of totally real octic fields; minimum 282300416"),
    ("x^6 - 2*x^5 + 3*x^3 - 2*x - 1", 28037,
     "tables of sextic fields of signature (2,2); minimum 28037"),
    ("x^8 - x^7 + x^5 - 2*x^4 - x^3 + 2*x^2 + 2*x - 1", 4286875,
     "tables of octic fields of signature (2,3); minimum 4286875"),
]
# literature completeness claim that is recorded but not consumed by the engine
SUBFIELD_CLAIM = {
    "degree": 8, "r1": 2, "r2": 3, "abs_disc_max_complete": 6688609,
    "scope": "with-proper-subfield",
    "source": "published enumeration of octic fields of signature (2,3) with a proper subfield",
}


def gp(expr: str):
    return pari(expr)


def signature(pol) -> tuple[int, int]:
    r1 = int(pari.polsturm(pol))
    deg = int(pari.poldegree(pol))
    return r1, (deg - r1) // 2


def class_number(pol) -> int:
    bnf = pari.bnfinit(pol, 1)
    if int(pari.bnfcertify(bnf)) != 1:
        raise RuntimeError(f"bnfcertify failed for {pol}")
    return int(gp("(b)->b.no")(bnf))


def coeffs(pol) -> list[int]:
    return [int(c) for c in pari.Vec(pol)]


def nflist_fields(groups, lo, hi, r2):
    found = {}
    for g in groups:
        for pol in gp(f'nflist("{g}", [{lo}, {hi}], {r2})'):
            pol = pari.polredabs(pol)
            found[str(pol)] = pol
    return list(found.values())


def quadratic_extensions(base_pol, rel_max: int, keep_real: int):
    """Absolute polynomials of quadratic extensions of the base field.

    Exactly ``keep_real`` real places of the base stay real in the extension
    and the relative discriminant has norm at most ``rel_max``.
    """
    bnf = pari.bnfinit(pari.subst(base_pol, "x", "y"), 1)
    r1 = int(gp("(b)->b.sign[1]")(bnf))
    archs = [a for a in itertools.product([0, 1], repeat=r1) if r1 - sum(a) == keep_real]
    out = {}
    ideals = pari.ideallist(bnf, rel_max)
    for norm in range(1, rel_max + 1):
        for f in ideals[norm - 1]:
            fac = pari.idealfactor(bnf, f)
            rows = int(gp("(M)->#M[,1]")(fac))
            # odd primes can only divide a quadratic conductor once
            if any(int(gp("(P)->P.p")(fac[0][i])) != 2 and int(fac[1][i]) > 1 for i in range(rows)):
                continue
            for a in archs:
                bnr = pari.bnrinit(bnf, [f, list(a)])
                for sub in pari.subgrouplist(bnr, [2], 0):
                    if int(pari.matdet(sub)) != 2:
                        continue
                    if int(gp("(b,H)->bnrconductor(b,H)==bnrconductor(b)")(bnr, sub)) != 1:
                        continue
                    pol = pari.polredabs(pari.bnrclassfield(bnr, sub, 2))
                    out[str(pol)] = pol
    return list(out.values())


class Builder:
    def __init__(self) -> None:
        self.records: dict[str, dict] = {}   # keyed by polredabs string
        self.completeness: list[dict] = []

    def add(self, pol, source: str, base: str | None = None) -> dict:
        key = str(pol)
        rec = self.records.get(key)
        if rec is None:
            r1, r2 = signature(pol)
            disc = int(pari.nfdisc(pol))
            rec = {
                "degree": int(pari.poldegree(pol)), "r1": r1, "r2": r2,
                "disc_abs": abs(disc), "disc_sign": 1 if disc > 0 else -1,
                "class_number": class_number(pol),
                "class_number_provenance": "unconditional",
                "source": source, "base_labels": [], "polynomial": coeffs(pol),
                "_key": key,
            }
            self.records[key] = rec
        if base is not None and base not in rec["base_labels"]:
            rec["base_labels"].append(base)
        return rec

    def scope(self, degree, r1, r2, bound, scope, source) -> None:
        self.completeness.append({
            "degree": degree, "r1": r1, "r2": r2, "abs_disc_max_complete": bound,
            "scope": scope, "source": source,
        })

    def assign_labels(self) -> None:
        groups: dict[tuple, list[dict]] = {}
        for rec in self.records.values():
            groups.setdefault((rec["degree"], rec["r1"], rec["disc_abs"]), []).append(rec)
        for (deg, r1, d), recs in groups.items():
            for i, rec in enumerate(sorted(recs, key=lambda r: r["_key"]), start=1):
                rec["label"] = f"{deg}.{r1}.{d}.{i}"

    def label_of(self, pol) -> str:
        return self.records[str(pari.polredabs(pol))]["label"]


def build() -> tuple[dict, list[dict]]:
    b = Builder()
    pari_src = f"computed with PARI/GP {pari.version()}"
    b.add(gp("x"), "trivial field")
    b.scope(1, 1, 0, 1, "all", "the rational field is the only field of degree 1")

    quad = nflist_fields(["C2"], 1, QUADRATIC_MAX, 0)
    cubic = nflist_fields(["C3", "S3"], 1, CUBIC_MAX, 0)
    quartic = nflist_fields(["C4", "V4", "D4", "A4", "S4"], 1, QUARTIC_MAX, 0)
    quartic21 = nflist_fields(["D4", "S4"], 1, QUARTIC_21_MAX, 1)
    for pols, deg, bound in ((quad, 2, QUADRATIC_MAX), (cubic, 3, CUBIC_MAX), (quartic, 4, QUARTIC_MAX)):
        for pol in pols:
            b.add(pol, pari_src + " (nflist)")
        b.scope(deg, deg, 0, bound, "all", pari_src + " (nflist over every Galois group)")
    b.assign_labels()

    for pol in quartic21:
        b.add(pol, pari_src + " (nflist)")
    b.scope(4, 2, 1, QUARTIC_21_MAX, "all", pari_src + " (nflist, groups D4 and S4)")

    # sextics of signature (2,2) that are quadratic over a totally real cubic
    for cpol in cubic:
        dk = abs(int(pari.nfdisc(cpol)))
        rel_max = SEXTIC_22_MAX // (dk * dk)
        if rel_max < 1:
            continue
        for pol in quadratic_extensions(cpol, rel_max, keep_real=1):
            b.add(pol, pari_src + " (ray class fields)")
    b.scope(6, 2, 2, SEXTIC_22_MAX, "quadratic-extensions-of-totally-real",
            pari_src + " (ray class fields over every totally real cubic with D_k^2 <= bound)")

    # octics of signature (2,3) over the three small totally real quartics
    by_disc = {abs(int(pari.nfdisc(p))): p for p in quartic}
    octic_bases = []
    for dk, rel_max in OCTIC_BASES.items():
        for pol in quadratic_extensions(by_disc[dk], rel_max, keep_real=1):
            b.add(pol, pari_src + " (ray class fields)")
        octic_bases.append((dk, rel_max))

    literature = []
    for text, bound, source in LITERATURE:
        rec = b.add(pari.polredabs(gp(text)), "literature: " + source)
        literature.append((rec, bound, source))

    b.assign_labels()
    # base labels: identify subfields of half degree among listed fields
    for rec in b.records.values():
        if rec["degree"] not in (4, 6, 8) or rec["r1"] == rec["degree"]:
            continue
        pol = pari.Pol(rec["polynomial"])
        for sub in pari.nfsubfields(pol, rec["degree"] // 2):
            spol = pari.polredabs(sub[0])
            key = str(spol)
            if key not in b.records:
                # a base outside the listed ranges (e.g. not totally real)
                r1, _ = signature(spol)
                d = abs(int(pari.nfdisc(spol)))
                label = f"{rec['degree'] // 2}.{r1}.{d}.?"
            else:
                label = b.records[key]["label"]
            if label not in rec["base_labels"]:
                rec["base_labels"].append(label)
        rec["base_labels"].sort()

    for dk, rel_max in octic_bases:
        base = b.label_of(by_disc[dk])
        b.scope(8, 2, 3, rel_max * dk * dk, f"quadratic-extensions-of:{base}",
                pari_src + " (ray class fields over the base)")
    for rec, bound, source in literature:
        b.scope(rec["degree"], rec["r1"], rec["r2"], bound, "all", "literature: " + source)
    b.completeness.append(SUBFIELD_CLAIM)

    header = {
        "format": "covolcert-snapshot",
        "schema_version": 1,
        "metadata": (
            "Reference snapshot of number fields used by the covolume certificate. "
            "Computed entries: " + pari_src + "; class numbers proved with bnfcertify. "
            "Labels are degree.r1.disc.index with a locally assigned index."
        ),
        "completeness": b.completeness,
    }
    records = sorted(b.records.values(), key=lambda r: (r["degree"], r["r1"], r["disc_abs"], r["label"]))
    for rec in records:
        del rec["_key"]
    return header, records


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", type=Path)
    args = ap.parse_args(argv)
    header, records = build()
    keys = ["label", "degree", "r1", "r2", "disc_abs", "disc_sign", "class_number",
            "class_number_provenance", "source", "base_labels", "polynomial"]
    with args.out.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=False) + "\n")
        for rec in records:
            fh.write(json.dumps({k: rec[k] for k in keys}) + "\n")
    print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
