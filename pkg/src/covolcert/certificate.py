"""Certificate steps, adaptive inequality decisions and the JSONL file format.

A :class:`Step` records one claim.  Numeric claims are decided by
:func:`decide`, which evaluates both sides at 64 bits and doubles the
precision until the enclosures separate or the cap is reached.  A strict
claim ``lhs < rhs`` is Verified only when ``lhs.hi < rhs.lo``.
"""

from __future__ import annotations

import contextlib
import contextvars
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, TextIO, Union

from covolcert import __version__
from covolcert.rigor import Interval, interval

DEFAULT_CAP = 4096
START_BITS = 64

CONCLUSION = "minimal covolume forces k=Q, inner form, all parahorics hyperspecial"


class Status(str, Enum):
    VERIFIED = "Verified"
    FAILED = "Failed"
    UNDECIDED = "Undecided"
    DATA_VERIFIED = "DataDependent-Verified"
    DATA_UNVERIFIED = "DataDependent-Unverified"
    AXIOM = "Axiom"

    @property
    def ok(self) -> bool:
        """Whether a step with this status supports the conclusion."""
        return self in (Status.VERIFIED, Status.DATA_VERIFIED, Status.AXIOM)


class Relation(str, Enum):
    LT = "<"
    LE = "<="
    EQ = "="
    NONEXISTENCE = "nonexistence"
    EXISTENCE = "existence"
    AXIOM = "axiom"


Side = Union[Interval, int, Fraction, None]
Evaluator = Callable[[int], "tuple[Interval | int | Fraction, Interval | int | Fraction]"]

_CAP: contextvars.ContextVar[int] = contextvars.ContextVar("covolcert_precision_cap", default=DEFAULT_CAP)


def get_precision_cap() -> int:
    return _CAP.get()


@contextlib.contextmanager
def precision_cap(bits: int) -> Iterator[int]:
    """Set the largest precision that :func:`decide` may use."""
    if bits < START_BITS:
        raise ValueError(f"precision cap must be at least {START_BITS} bits")
    token = _CAP.set(bits)
    try:
        yield bits
    finally:
        _CAP.reset(token)


def compare(lhs: Interval, rhs: Interval, relation: Relation) -> bool | None:
    """True if the relation certainly holds, False if it certainly fails, else None."""
    if relation is Relation.LT:
        if lhs.hi < rhs.lo:
            return True
        if lhs.lo >= rhs.hi:
            return False
        return None
    if relation is Relation.LE:
        if lhs.hi <= rhs.lo:
            return True
        if lhs.lo > rhs.hi:
            return False
        return None
    if relation is Relation.EQ:
        if lhs.is_exact and rhs.is_exact and lhs.lo == rhs.lo:
            return True
        if lhs.hi < rhs.lo or rhs.hi < lhs.lo:
            return False
        return None
    raise ValueError(f"{relation} is not a numeric relation")


@dataclass(frozen=True)
class Decision:
    status: Status
    lhs: Interval
    rhs: Interval
    bits: int


def decide(evaluate: Evaluator, relation: Relation | str, cap: int | None = None, start: int = START_BITS) -> Decision:
    """Evaluate at doubling precision until the relation is settled or the cap is hit."""
    relation = Relation(relation)
    cap = get_precision_cap() if cap is None else cap
    bits = min(start, cap)
    while True:
        lhs, rhs = (interval(v) for v in evaluate(bits))
        verdict = compare(lhs, rhs, relation)
        if verdict is True:
            return Decision(Status.VERIFIED, lhs, rhs, bits)
        if verdict is False:
            return Decision(Status.FAILED, lhs, rhs, bits)
        if bits >= cap:
            return Decision(Status.UNDECIDED, lhs, rhs, bits)
        bits = min(2 * bits, cap)


@dataclass(frozen=True)
class Step:
    """One claim of a certificate.

    ``ref`` names the part of the argument the step belongs to.  ``inputs``
    lists ids of earlier steps this one depends on.  ``critical`` steps must
    all succeed for the conclusion to be drawn; non-critical steps are
    cross-checks.
    """

    id: str
    claim: str
    relation: Relation
    lhs: Side
    rhs: Side
    status: Status
    ref: str
    inputs: tuple[str, ...] = ()
    note: str = ""
    bits: int | None = None
    critical: bool = True
    evaluator: Evaluator | None = field(default=None, compare=False, repr=False)

    def recheck(self, bits: int) -> Decision:
        """Re-evaluate a numeric step at a fixed precision."""
        if self.evaluator is None:
            raise ValueError(f"step {self.id} has no evaluator")
        return decide(self.evaluator, self.relation, cap=bits, start=bits)

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "claim": self.claim,
            "relation": self.relation.value,
            "lhs": _side_record(self.lhs),
            "rhs": _side_record(self.rhs),
            "status": self.status.value,
            "ref": self.ref,
            "inputs": list(self.inputs),
            "note": self.note,
            "bits": self.bits,
            "critical": self.critical,
        }


def _side_record(v: Side) -> dict | str | None:
    if v is None:
        return None
    if isinstance(v, Interval):
        return {"lo": str(v.lo), "hi": str(v.hi)}
    return str(v)


def numeric_step(
    id: str,
    claim: str,
    relation: Relation | str,
    evaluate: Evaluator,
    ref: str,
    inputs: Sequence[str] = (),
    note: str = "",
    critical: bool = True,
) -> Step:
    """Decide a numeric claim adaptively and wrap it as a step."""
    d = decide(evaluate, relation)
    return Step(id, claim, Relation(relation), d.lhs, d.rhs, d.status, ref, tuple(inputs), note, d.bits, critical, evaluate)


def axiom_step(id: str, claim: str, ref: str, inputs: Sequence[str] = (), note: str = "") -> Step:
    """A reduction taken from the literature; recorded but not computed."""
    return Step(id, claim, Relation.AXIOM, None, None, Status.AXIOM, ref, tuple(inputs), note)


def data_step(
    id: str,
    claim: str,
    relation: Relation | str,
    lhs: Side,
    rhs: Side,
    holds: bool,
    certain: bool,
    ref: str,
    inputs: Sequence[str] = (),
    note: str = "",
) -> Step:
    """A claim about the field snapshot.

    It is DataDependent-Verified only if it holds and the snapshot is known
    to be complete for the query; a definite counterexample makes it Failed.
    """
    if holds and certain:
        status = Status.DATA_VERIFIED
    elif not holds and certain:
        status = Status.FAILED
    else:
        status = Status.DATA_UNVERIFIED
    return Step(id, claim, Relation(relation), lhs, rhs, status, ref, tuple(inputs), note)


def derived_step(id: str, claim: str, ref: str, inputs: Sequence[str], steps: Iterable[Step], note: str = "") -> Step:
    """A case conclusion drawn from earlier steps; its status is the weakest status among its ancestors.

    The claim is a nonexistence statement (no lattice of minimal covolume in
    the case), so the relation is ``nonexistence``.
    """
    if not inputs:
        raise ValueError(f"derived step {id} needs inputs")
    by_id = {s.id: s for s in steps}
    return Step(id, claim, Relation.NONEXISTENCE, None, None, combine(_ancestor_statuses(inputs, by_id)), ref,
                tuple(inputs), note)


def _ancestor_statuses(inputs: Iterable[str], by_id: dict[str, Step]) -> list[Status]:
    """Statuses of the inputs and everything they depend on."""
    seen: set[str] = set()
    stack = list(inputs)
    out = []
    while stack:
        i = stack.pop()
        if i in seen:
            continue
        seen.add(i)
        step = by_id[i]
        out.append(step.status)
        stack.extend(step.inputs)
    return out


def combine(statuses: Iterable[Status]) -> Status:
    """Weakest status of a conjunction of steps."""
    statuses = list(statuses)
    if Status.AXIOM in statuses and all(s in (Status.AXIOM, Status.VERIFIED) for s in statuses):
        return Status.VERIFIED
    for bad in (Status.FAILED, Status.UNDECIDED, Status.DATA_UNVERIFIED):
        if bad in statuses:
            return bad
    if Status.DATA_VERIFIED in statuses:
        return Status.DATA_VERIFIED
    return Status.VERIFIED


@dataclass(frozen=True)
class Certificate:
    steps: tuple[Step, ...]
    snapshot_fingerprint: str
    precision_cap: int = DEFAULT_CAP
    tool_version: str = __version__

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for s in self.steps:
            if s.id in seen:
                raise ValueError(f"duplicate step id {s.id}")
            missing = [i for i in s.inputs if i not in seen]
            if missing:
                raise ValueError(f"step {s.id} depends on later or unknown steps {missing}")
            seen.add(s.id)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def step(self, id: str) -> Step:
        for s in self.steps:
            if s.id == id:
                return s
        raise KeyError(id)

    def count(self, status: Status) -> int:
        return sum(1 for s in self.steps if s.status is status)

    def blocking(self) -> list[Step]:
        """Critical steps that prevent the conclusion."""
        return [s for s in self.steps if s.critical and not s.status.ok]

    @property
    def conclusion(self) -> str:
        bad = self.blocking()
        if not bad:
            return CONCLUSION
        return f"withheld: {len(bad)} critical step(s) not verified, first {bad[0].id} ({bad[0].status.value})"

    @property
    def concluded(self) -> bool:
        return not self.blocking()

    def header(self) -> dict:
        return {
            "format": "covolcert-certificate",
            "tool_version": self.tool_version,
            "snapshot_fingerprint": self.snapshot_fingerprint,
            "precision_cap": self.precision_cap,
        }

    def write(self, fh: TextIO) -> None:
        fh.write(json.dumps(self.header()) + "\n")
        for s in self.steps:
            fh.write(json.dumps(s.to_record()) + "\n")
        fh.write(json.dumps({"conclusion": self.conclusion, "concluded": self.concluded}) + "\n")

    def dumps(self) -> str:
        buf = io.StringIO()
        self.write(buf)
        return buf.getvalue()
