"""Curated number-field snapshots and the queries the elimination engine asks of them.

A snapshot is a JSON-lines file.  The first line is a header object::

    {"format": "covolcert-snapshot", "schema_version": 1, "metadata": "...",
     "completeness": [{"degree": 4, "r1": 2, "r2": 1,
                       "abs_disc_max_complete": 13643, "scope": "all",
                       "source": "..."}, ...]}

and every further line is one field record (see :class:`FieldRecord`).  A
completeness range asserts that the snapshot lists every field of the given
signature and scope with 1 <= |disc| <= abs_disc_max_complete.  Scopes:

``all``
    every field of the signature;
``quadratic-extensions-of-totally-real``
    every field that is a quadratic extension of a totally real field;
``quadratic-extensions-of:<label>``
    every quadratic extension of the named base field;
``with-proper-subfield``
    every field having a proper subfield other than Q.

Answers carry a :class:`Certainty`.  Only ``CERTAIN`` answers may support a
nonexistence claim in a certificate.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable

from covolcert.errors import DuplicateLabel, NoData, ParseError, SchemaError

SNAPSHOT_FORMAT = "covolcert-snapshot"
SCHEMA_VERSION = 1
UNCONDITIONAL = "unconditional"

SCOPE_ALL = "all"
SCOPE_QUAD_TOTALLY_REAL = "quadratic-extensions-of-totally-real"
SCOPE_QUAD_OF = "quadratic-extensions-of:"
SCOPE_PROPER_SUBFIELD = "with-proper-subfield"


class Certainty(str, Enum):
    CERTAIN = "Certain"
    HEURISTIC = "Heuristic"      # a sound superset, but the extension relation is not recorded
    INCOMPLETE = "Incomplete"


@dataclass(frozen=True)
class FieldRecord:
    """One number field.

    ``base_labels`` lists labels of the subfields of index 2; it is what
    certifies that the field is a quadratic extension of a given base.  An
    empty tuple means there is no such subfield, ``None`` that it is unknown.
    """

    label: str
    degree: int
    r1: int
    r2: int
    disc_abs: int
    disc_sign: int
    class_number: int
    source: str = ""
    class_number_provenance: str = UNCONDITIONAL
    base_labels: tuple[str, ...] | None = None
    polynomial: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for name in ("degree", "r1", "r2", "disc_abs", "disc_sign", "class_number"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError(f"{self.label}: {name} must be an integer, got {v!r}")
        if self.degree < 1 or self.r1 < 0 or self.r2 < 0 or self.r1 + 2 * self.r2 != self.degree:
            raise SchemaError(f"{self.label}: r1 + 2 r2 = {self.r1 + 2 * self.r2} differs from degree {self.degree}")
        if self.disc_abs < 1:
            raise SchemaError(f"{self.label}: disc_abs must be positive")
        if self.disc_sign not in (1, -1):
            raise SchemaError(f"{self.label}: disc_sign must be +1 or -1")
        if self.disc_sign != (-1) ** self.r2:
            raise SchemaError(f"{self.label}: the sign of the discriminant must be (-1)^r2")
        if self.class_number < 1:
            raise SchemaError(f"{self.label}: class_number must be >= 1")
        if self.base_labels is not None:
            object.__setattr__(self, "base_labels", tuple(self.base_labels))
        object.__setattr__(self, "polynomial", tuple(self.polynomial))

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.degree, self.r1, self.r2)

    @property
    def totally_real(self) -> bool:
        return self.r2 == 0

    @classmethod
    def from_dict(cls, d: dict) -> "FieldRecord":
        if not isinstance(d, dict):
            raise SchemaError("a field record must be a JSON object")
        missing = [k for k in ("label", "degree", "r1", "r2", "disc_abs", "disc_sign", "class_number") if k not in d]
        if missing:
            raise SchemaError(f"record {d.get('label', '?')} lacks {missing}")
        return cls(
            label=str(d["label"]),
            degree=d["degree"],
            r1=d["r1"],
            r2=d["r2"],
            disc_abs=d["disc_abs"],
            disc_sign=d["disc_sign"],
            class_number=d["class_number"],
            source=str(d.get("source", "")),
            class_number_provenance=str(d.get("class_number_provenance", UNCONDITIONAL)),
            base_labels=None if d.get("base_labels") is None else tuple(d["base_labels"]),
            polynomial=tuple(d.get("polynomial", ())),
        )

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "degree": self.degree,
            "r1": self.r1,
            "r2": self.r2,
            "disc_abs": self.disc_abs,
            "disc_sign": self.disc_sign,
            "class_number": self.class_number,
            "class_number_provenance": self.class_number_provenance,
            "source": self.source,
            "base_labels": None if self.base_labels is None else list(self.base_labels),
            "polynomial": list(self.polynomial),
        }


@dataclass(frozen=True)
class CompletenessRange:
    degree: int
    r1: int
    r2: int
    abs_disc_max_complete: int
    scope: str = SCOPE_ALL
    source: str = ""

    def __post_init__(self) -> None:
        if self.r1 + 2 * self.r2 != self.degree:
            raise SchemaError("completeness range: r1 + 2 r2 must equal degree")
        if self.abs_disc_max_complete < 0:
            raise SchemaError("completeness range: negative bound")
        if not (
            self.scope in (SCOPE_ALL, SCOPE_QUAD_TOTALLY_REAL, SCOPE_PROPER_SUBFIELD)
            or self.scope.startswith(SCOPE_QUAD_OF)
        ):
            raise SchemaError(f"completeness range: unknown scope {self.scope!r}")

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.degree, self.r1, self.r2)


@dataclass(frozen=True)
class Snapshot:
    records: tuple[FieldRecord, ...]
    completeness: tuple[CompletenessRange, ...] = ()
    metadata: str = ""
    fingerprint: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for r in self.records:
            if r.label in seen:
                raise DuplicateLabel(f"duplicate label {r.label}")
            seen.add(r.label)

    def by_label(self, label: str) -> FieldRecord:
        for r in self.records:
            if r.label == label:
                return r
        raise NoData(f"no field labelled {label}")

    def with_signature(self, degree: int, r1: int, r2: int) -> list[FieldRecord]:
        return [r for r in self.records if r.signature == (degree, r1, r2)]

    def complete_up_to(self, degree: int, r1: int, r2: int, scopes: Iterable[str] = (SCOPE_ALL,)) -> int:
        """Largest bound up to which the signature is complete for any of the scopes (0 if none)."""
        scopes = set(scopes)
        bounds = [c.abs_disc_max_complete for c in self.completeness
                  if c.signature == (degree, r1, r2) and c.scope in scopes]
        return max(bounds, default=0)

    def to_jsonl(self) -> str:
        header = {
            "format": SNAPSHOT_FORMAT,
            "schema_version": SCHEMA_VERSION,
            "metadata": self.metadata,
            "completeness": [
                {"degree": c.degree, "r1": c.r1, "r2": c.r2, "abs_disc_max_complete": c.abs_disc_max_complete,
                 "scope": c.scope, "source": c.source}
                for c in self.completeness
            ],
        }
        lines = [json.dumps(header)] + [json.dumps(r.to_dict()) for r in self.records]
        return "\n".join(lines) + "\n"


def reference_snapshot_path() -> Path:
    """Path of the snapshot shipped with the package."""
    return Path(str(resources.files("covolcert.data").joinpath("reference_snapshot.jsonl")))


def fingerprint(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def loads(text: str) -> Snapshot:
    """Parse snapshot text (see the module docstring for the format)."""
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise ParseError("empty snapshot")
    objs = []
    for no, ln in lines:
        try:
            objs.append(json.loads(ln))
        except json.JSONDecodeError as e:
            raise ParseError(f"line {no}: {e.msg}") from e
    header = objs[0]
    if not isinstance(header, dict) or header.get("format") != SNAPSHOT_FORMAT:
        raise SchemaError(f"first line must be a header with format {SNAPSHOT_FORMAT!r}")
    if header.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {header.get('schema_version')!r}")
    ranges = []
    for c in header.get("completeness", []):
        try:
            ranges.append(CompletenessRange(
                c["degree"], c["r1"], c["r2"], c["abs_disc_max_complete"], c.get("scope", SCOPE_ALL), c.get("source", "")
            ))
        except (KeyError, TypeError) as e:
            raise SchemaError(f"malformed completeness range {c!r}") from e
    records = tuple(FieldRecord.from_dict(o) for o in objs[1:])
    return Snapshot(records, tuple(ranges), str(header.get("metadata", "")), fingerprint(text.encode("utf-8")))


def load_snapshot(path: str | Path) -> Snapshot:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise ParseError(f"cannot read snapshot {path}: {e}") from e
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"snapshot {path} is not UTF-8") from e
    snap = loads(text)
    return Snapshot(snap.records, snap.completeness, snap.metadata, fingerprint(data))


def load_reference_snapshot() -> Snapshot:
    return load_snapshot(reference_snapshot_path())


def empty_snapshot() -> Snapshot:
    """A snapshot with no records and no completeness claims."""
    return Snapshot((), (), "empty", fingerprint(b""))


@dataclass(frozen=True)
class MinDisc:
    value: int
    certainty: Certainty
    record: FieldRecord


@dataclass(frozen=True)
class QueryResult:
    records: tuple[FieldRecord, ...]
    certainty: Certainty
    covered_up_to: int = 0

    @property
    def empty(self) -> bool:
        return not self.records


def min_disc(s: Snapshot, degree: int, r1: int, r2: int) -> MinDisc:
    """Smallest |disc| among fields of the signature; Certain if a complete range reaches it."""
    recs = s.with_signature(degree, r1, r2)
    if not recs:
        raise NoData(f"no fields of signature ({degree},{r1},{r2}) in the snapshot")
    best = min(recs, key=lambda r: (r.disc_abs, r.label))
    sure = s.complete_up_to(degree, r1, r2) >= best.disc_abs
    return MinDisc(best.disc_abs, Certainty.CERTAIN if sure else Certainty.INCOMPLETE, best)


def query_window(s: Snapshot, degree: int, r1: int, r2: int, disc_lo: int, disc_hi: int) -> QueryResult:
    """All fields of the signature with disc_lo <= |disc| <= disc_hi."""
    if disc_lo > disc_hi:
        raise ValueError(f"empty window [{disc_lo}, {disc_hi}]")
    recs = tuple(sorted(
        (r for r in s.with_signature(degree, r1, r2) if disc_lo <= r.disc_abs <= disc_hi),
        key=lambda r: (r.disc_abs, r.label),
    ))
    covered = s.complete_up_to(degree, r1, r2)
    return QueryResult(recs, Certainty.CERTAIN if disc_hi <= covered else Certainty.INCOMPLETE, covered)


def quadratic_extension_candidates(
    s: Snapshot, base: FieldRecord, rel_norm_max: int, require_unconditional: bool = False
) -> QueryResult:
    """Fields l of signature (2, m-1) that may be quadratic extensions of the totally real ``base``.

    Returned are the fields with D_l <= rel_norm_max * D_k^2 and D_k^2 | D_l that
    either list ``base`` among their base labels or have unknown base labels.
    The latter are kept (divisibility alone cannot exclude them) and make
    the answer ``HEURISTIC``.  The answer is ``CERTAIN`` only if a completeness
    range covering quadratic extensions of the base reaches rel_norm_max * D_k^2.
    With ``require_unconditional`` a candidate whose class number is not
    unconditionally proved downgrades the answer to ``INCOMPLETE``.
    """
    if not base.totally_real:
        raise ValueError(f"base field {base.label} is not totally real")
    if rel_norm_max < 1:
        return QueryResult((), Certainty.CERTAIN, 0)
    m = base.degree
    d2 = base.disc_abs**2
    bound = rel_norm_max * d2
    sig = (2 * m, 2, m - 1)
    out, heuristic = [], False
    for r in s.with_signature(*sig):
        if r.disc_abs > bound or r.disc_abs % d2:
            continue
        if r.base_labels is None:
            out.append(r)
            heuristic = True
        elif base.label in r.base_labels:
            out.append(r)
    out.sort(key=lambda r: (r.disc_abs, r.label))
    scopes = [SCOPE_ALL, SCOPE_QUAD_OF + base.label, SCOPE_QUAD_TOTALLY_REAL]
    if m > 1:
        scopes.append(SCOPE_PROPER_SUBFIELD)
    covered = s.complete_up_to(*sig, scopes=scopes)
    if bound > covered:
        certainty = Certainty.INCOMPLETE
    elif require_unconditional and any(r.class_number_provenance != UNCONDITIONAL for r in out):
        certainty = Certainty.INCOMPLETE
    elif heuristic:
        certainty = Certainty.HEURISTIC
    else:
        certainty = Certainty.CERTAIN
    return QueryResult(tuple(out), certainty, covered)


def relative_norm(l: FieldRecord, base: FieldRecord) -> int:
    """D_l / D_k^2 for a quadratic extension l of k."""
    q, r = divmod(l.disc_abs, base.disc_abs**2)
    if r:
        raise ValueError(f"{l.label}: D_l is not divisible by D_k^2 of {base.label}")
    return q


def quadratic_extensions_of_totally_real(s: Snapshot, m: int, disc_max: int) -> QueryResult:
    """Fields of signature (2m, 2, m-1) with |disc| <= disc_max that are quadratic over a totally real field.

    A field qualifies if one of its base labels names a totally real field of
    degree m (labels start with "m.m.").  Fields with unknown base labels are
    kept and make the answer ``HEURISTIC``.
    """
    if m < 1:
        raise ValueError("m >= 1")
    sig = (2 * m, 2, m - 1)
    prefix = f"{m}.{m}."
    out, heuristic = [], False
    for r in s.with_signature(*sig):
        if r.disc_abs > disc_max:
            continue
        if r.base_labels is None:
            out.append(r)
            heuristic = True
        elif any(b.startswith(prefix) for b in r.base_labels):
            out.append(r)
    out.sort(key=lambda r: (r.disc_abs, r.label))
    covered = s.complete_up_to(*sig, scopes=(SCOPE_ALL, SCOPE_QUAD_TOTALLY_REAL))
    if disc_max > covered:
        certainty = Certainty.INCOMPLETE
    elif heuristic:
        certainty = Certainty.HEURISTIC
    else:
        certainty = Certainty.CERTAIN
    return QueryResult(tuple(out), certainty, covered)
