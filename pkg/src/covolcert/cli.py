"""Command line front end: ``covol-cert <command> [options]``.

Commands
    tables ID      compute a table (A3, A5, A6, A7, A8, A9) next to its published values
    lemmas         verify the constants and the monotonicity statements
    eliminate      run the steps excluding one (m, n)
    certify        run every case and write the certificate
    oracle C       compare the parabolic index formula with brute-force flag counting

Exit codes: 0 every step verified, 1 some step failed, 2 some step undecided
(also used by argparse for usage errors), 3 field data missing or incomplete.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from covolcert import __version__
from covolcert.certificate import Status, Step, precision_cap
from covolcert.elimination import DEFAULT_N_MAX, certify_all, eliminate, verify_lemmas
from covolcert.errors import CovolCertError, MissingSnapshot, NoData, SizeLimitExceeded
from covolcert.field_data import Snapshot, load_reference_snapshot, load_snapshot
from covolcert.finite_groups import Composition, brute_force_flag_count, parabolic_index
from covolcert.tables import TABLE_IDS, compute_table, render

EXIT_OK, EXIT_FAILED, EXIT_UNDECIDED, EXIT_NO_DATA = 0, 1, 2, 3
FORMATS = ("table-text", "csv", "step-records")
SNAPSHOT_ENV = "COVOL_SNAPSHOT"
REFERENCE = "reference"
DEFAULT_CAP = 4096


@dataclass(frozen=True)
class CliConfig:
    precision_cap: int = DEFAULT_CAP
    snapshot_path: str | None = None
    output_format: str = "table-text"
    n_max: int = DEFAULT_N_MAX
    out: str | None = None

    def __post_init__(self) -> None:
        if self.precision_cap < 64:
            raise ValueError("--precision-cap must be at least 64")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")

    def snapshot(self) -> Snapshot | None:
        """The snapshot named by --snapshot or $COVOL_SNAPSHOT; ``reference`` is the bundled one."""
        if self.snapshot_path is None:
            return None
        if self.snapshot_path == REFERENCE:
            return load_reference_snapshot()
        return load_snapshot(self.snapshot_path)


def exit_code(steps: Iterable[Step]) -> int:
    statuses = {s.status for s in steps}
    if Status.FAILED in statuses:
        return EXIT_FAILED
    if Status.UNDECIDED in statuses:
        return EXIT_UNDECIDED
    if Status.DATA_UNVERIFIED in statuses:
        return EXIT_NO_DATA
    return EXIT_OK


def _first_bad(steps: Iterable[Step]) -> Step | None:
    return next((s for s in steps if not s.status.ok), None)


@contextmanager
def _output(cfg: CliConfig) -> Iterator[TextIO]:
    if cfg.out is None:
        yield sys.stdout
    else:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            yield fh


def _write_steps(steps: list[Step], cfg: CliConfig, fh: TextIO) -> None:
    if cfg.output_format == "step-records":
        for s in steps:
            fh.write(json.dumps(s.to_record()) + "\n")
    elif cfg.output_format == "csv":
        fh.write("id,status,critical,claim\n")
        for s in steps:
            claim = s.claim.replace('"', '""')
            fh.write(f'{s.id},{s.status.value},{str(s.critical).lower()},"{claim}"\n')
    else:
        for s in steps:
            fh.write(f"{s.status.value:<26} {s.id}  {s.claim}\n")


def _summary(steps: list[Step]) -> str:
    counts: dict[str, int] = {}
    for s in steps:
        counts[s.status.value] = counts.get(s.status.value, 0) + 1
    return ", ".join(f"{k} {v}" for k, v in sorted(counts.items()))


def _finish_steps(steps: list[Step], cfg: CliConfig) -> int:
    with _output(cfg) as fh:
        _write_steps(steps, cfg, fh)
    code = exit_code(steps)
    print(f"{len(steps)} steps: {_summary(steps)}", file=sys.stderr)
    bad = _first_bad(steps)
    if bad is not None:
        print(f"first unverified step: {bad.id} ({bad.status.value})", file=sys.stderr)
    return code


def cmd_tables(table_id: str, cfg: CliConfig) -> int:
    table = compute_table(table_id, cfg.snapshot())
    with _output(cfg) as fh:
        if cfg.output_format == "step-records":
            for c in table.cells:
                fh.write(json.dumps({"table": table.id, "key": list(c.key), "computed": c.rendered,
                                     "published": c.printed, "lo": str(c.enclosure.lo), "hi": str(c.enclosure.hi),
                                     "match": c.match}) + "\n")
        else:
            fh.write(render(table, cfg.output_format))
    return EXIT_OK if table.all_match else EXIT_FAILED


def cmd_lemmas(cfg: CliConfig) -> int:
    return _finish_steps(verify_lemmas(n_max=cfg.n_max), cfg)


def cmd_eliminate(m: int, n: int, cfg: CliConfig) -> int:
    return _finish_steps(eliminate(m, n, cfg.snapshot(), n_max=cfg.n_max), cfg)


def cmd_certify(cfg: CliConfig) -> int:
    cert = certify_all(n_max=cfg.n_max, snapshot=cfg.snapshot())
    steps = list(cert.steps)
    with _output(cfg) as fh:
        if cfg.output_format == "step-records":
            cert.write(fh)
        else:
            _write_steps(steps, cfg, fh)
    print(f"{len(steps)} steps: {_summary(steps)}", file=sys.stderr)
    print(f"conclusion: {cert.conclusion}", file=sys.stderr)
    return exit_code(steps)


def cmd_oracle(composition: str, q: int, cfg: CliConfig) -> int:
    c = Composition.parse(composition)
    formula = parabolic_index(c, q)
    try:
        brute = brute_force_flag_count(c, q)
    except SizeLimitExceeded as e:
        print(f"{formula} (formula); brute force skipped: {e}")
        return EXIT_UNDECIDED
    with _output(cfg) as fh:
        fh.write(f"{formula} {'=' if formula == brute else '!='} {brute} (formula = brute force)\n")
    return EXIT_OK if formula == brute else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-cap", type=int, default=DEFAULT_CAP,
                        help=f"largest working precision in bits (default {DEFAULT_CAP}, minimum 64)")
    common.add_argument("--snapshot", default=None,
                        help=f"field snapshot (JSONL path, or '{REFERENCE}' for the bundled one); "
                             f"falls back to ${SNAPSHOT_ENV}; default none")
    common.add_argument("--format", choices=FORMATS, default="table-text", help="output format (default table-text)")
    common.add_argument("--n-max", type=int, default=DEFAULT_N_MAX,
                        help=f"largest n in the explicit grid checks (default {DEFAULT_N_MAX})")
    common.add_argument("--out", default=None, help="write output to this file instead of stdout")

    p = argparse.ArgumentParser(prog="covol-cert", description="Certificate engine for minimal-covolume lattices.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    t = sub.add_parser("tables", parents=[common], help="compute a table next to its published values")
    t.add_argument("table_id", choices=TABLE_IDS)
    sub.add_parser("lemmas", parents=[common], help="verify the constants and monotonicity statements")
    e = sub.add_parser("eliminate", parents=[common], help="run the steps excluding one (m, n)")
    e.add_argument("--m", type=int, required=True, help="degree of k over Q")
    e.add_argument("--n", type=int, required=True, help="G has type A_{n-1}")
    sub.add_parser("certify", parents=[common], help="run every case and assemble the certificate")
    o = sub.add_parser("oracle", parents=[common], help="formula against brute-force flag counting")
    o.add_argument("composition", help="block sizes, e.g. 2,1")
    o.add_argument("--q", type=int, required=True, help="field size (prime for brute force)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = CliConfig(args.precision_cap, args.snapshot or os.environ.get(SNAPSHOT_ENV) or None,
                        args.format, args.n_max, args.out)
    except ValueError as e:
        print(f"covol-cert: {e}", file=sys.stderr)
        return EXIT_UNDECIDED
    if cfg.out is not None:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    try:
        with precision_cap(cfg.precision_cap):
            if args.command == "tables":
                return cmd_tables(args.table_id, cfg)
            if args.command == "lemmas":
                return cmd_lemmas(cfg)
            if args.command == "eliminate":
                return cmd_eliminate(args.m, args.n, cfg)
            if args.command == "certify":
                return cmd_certify(cfg)
            return cmd_oracle(args.composition, args.q, cfg)
    except (MissingSnapshot, NoData) as e:
        print(f"covol-cert: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NO_DATA
    except (CovolCertError, ValueError) as e:
        print(f"covol-cert: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
