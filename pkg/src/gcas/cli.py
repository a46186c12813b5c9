"""Command-line front end.

Exit codes: 0 success or verified, 1 I/O or parse error, 2 parameter
validation failure, 3 verification failed, 4 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from pathlib import Path

from . import catalog
from .construct import (
    DEFAULT_STRATEGY,
    DuplicateMembersWarning,
    OffsetStrategy,
    ParameterError,
    Theorem1Params,
    Theorem2Params,
    build_t1_set,
    build_t2_set,
    validate_t1,
    validate_t2,
)
from .core import GCASError, ValidationError
from .cyclotomic import is_zero, to_complex
from .documents import (
    DocumentError,
    arrayset_from_doc,
    arrayset_to_csv,
    arrayset_to_doc,
    dumps,
    format_rows,
    params_from_doc,
)
from .egbf import Theorem1Function
from .sweep import DESK_BOUNDS, SweepBounds, records_to_csv, run_t1_sweep, run_t2_sweep, summarize
from .verify import aacf_grid, check_gcas

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_NOT_GCAS, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _IOFailure(Exception):
    pass


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _IOFailure(f"{path}: invalid JSON ({exc})") from None


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from None


def example1_params() -> Theorem1Params:
    """The worked (9, 2, 8) example: q=6, b=2, m=1, n=3, one chain (4, 1, 2, 3), N=3."""
    return Theorem1Params(Theorem1Function(b=2, m=1, n=3, q=6, partitions=[[4, 1, 2, 3]]), N=3)


def cmd_gen(args) -> int:
    try:
        params = params_from_doc(_read_json(args.params))
    except DocumentError as exc:
        _err(f"error: {exc}")
        return EXIT_IO
    except ValidationError as exc:
        _err(str(exc))
        return EXIT_INVALID
    if isinstance(params, Theorem2Params):
        if args.strategy:
            params = Theorem2Params(params.fn, params.N1, params.N2, args.strategy)
        violations, build = validate_t2(params), build_t2_set
    else:
        violations, build = validate_t1(params), build_t1_set
    if violations:
        for v in violations:
            _err(v)
        return EXIT_INVALID
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DuplicateMembersWarning)
        array_set = build(params)
    for w in caught:
        _err(f"warning: {w.message}")
    text = arrayset_to_csv(array_set) if args.format == "csv" else dumps(arrayset_to_doc(array_set))
    _write(text, args.output)
    return EXIT_OK


def _load_set(path: str):
    try:
        return arrayset_from_doc(_read_json(path))
    except DocumentError as exc:
        raise _IOFailure(f"{path}: {exc}") from None


def cmd_verify(args) -> int:
    report = check_gcas(_load_set(args.set_file))
    print(report.summary())
    return EXIT_OK if report.is_gcas else EXIT_NOT_GCAS


def cmd_example1(args) -> int:
    try:
        params = example1_params()
        array_set = build_t1_set(params)
        for j, (label, member) in enumerate(zip(array_set.labels, array_set.members)):
            print(f"A{j} (n1,n2)=({','.join(map(str, label))})")
            for row in format_rows(member, array_set.q):
                print(f"  {row}")
        report = check_gcas(array_set)
        print(f"peak={report.peak}")
        print(f"GCAS: {'yes' if report.is_gcas else 'no'} "
              f"({report.set_size},{report.rows},{report.cols})")
        return EXIT_OK if report.is_gcas else EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - surfaced as exit 4
        _err(f"internal error: {exc}")
        return EXIT_INTERNAL


def cmd_sweep(args) -> int:
    if args.bounds:
        try:
            bounds = SweepBounds.from_dict(_read_json(args.bounds))
        except (TypeError, ValueError) as exc:
            raise _IOFailure(f"{args.bounds}: bad sweep bounds ({exc})") from None
    else:
        bounds = DESK_BOUNDS
    records = []
    if bounds.t1:
        records += run_t1_sweep(bounds.t1)
    if bounds.t2:
        records += run_t2_sweep(bounds.t2)
    _write(records_to_csv(records), args.output)
    out = sys.stderr if args.output in (None, "-") else sys.stdout
    summary = summarize(records)
    if not records:
        print("warning: no valid parameter tuples within the sweep bounds", file=sys.stderr)
        return EXIT_OK
    if summary.t1_total:
        print(f"t1: {summary.t1_passed}/{summary.t1_total} passed", file=out)
    if summary.t2_cases:
        for name, count in summary.strategy_passed.items():
            print(f"t2 {name}: {count}/{summary.t2_cases} passed", file=out)
        covering = ", ".join(summary.covering_strategies) or "none"
        print(f"t2 strategies passing every case: {covering} (default {DEFAULT_STRATEGY.value})", file=out)
    return EXIT_OK if summary.ok else EXIT_NOT_GCAS


def _num(x: float) -> str:
    return repr(round(x, 9) + 0.0)


def cmd_aacf_dump(args) -> int:
    array_set = _load_set(args.set_file)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["u1", "u2", "re", "im", "exact_zero"])
    for s, value in aacf_grid(array_set):
        re, im = to_complex(value)
        writer.writerow([s.u1, s.u2, _num(re), _num(im), int(is_zero(value))])
    _write(buf.getvalue(), args.output)
    return EXIT_OK


COMPARISONS = [
    (catalog.Source.Th1, catalog.Source.Ref18a),
    (catalog.Source.Th1, catalog.Source.Ref12a),
    (catalog.Source.Th1, catalog.Source.Ref11),
    (catalog.Source.Th1, catalog.Source.Ref16),
    (catalog.Source.Th1, catalog.Source.Ref17b),
    (catalog.Source.Th2, catalog.Source.Ref18b),
    (catalog.Source.Th2, catalog.Source.Ref12b),
    (catalog.Source.Th2, catalog.Source.Ref17a),
]


def cmd_compare(args) -> int:
    if args.bounds:
        try:
            bounds = catalog.Bounds.from_dict(_read_json(args.bounds))
        except (TypeError, ValueError) as exc:
            raise _IOFailure(f"{args.bounds}: bad catalog bounds ({exc})") from None
    else:
        bounds = catalog.Bounds()
    rows = {s: catalog.enumerate_feasible(s, bounds) for s in catalog.Source}
    printed = False
    for ours, prior in COMPARISONS:
        table = catalog.compare(rows[ours], rows[prior])
        if not table:
            continue
        printed = True
        print(f"== {ours.value} vs {prior.value} ==")
        print(catalog.render_comparison(table, ours.value, prior.value))
        print()
    if not printed:
        print("no comparable parameter keys within the bounds")
    if args.output:
        _write(catalog.rows_to_csv(r for s in catalog.Source for r in rows[s]), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gcas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="build an array set from a parameter document")
    p.add_argument("params")
    p.add_argument("--output", "-o")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--strategy", choices=[s.value for s in OffsetStrategy],
                   help="override the Theorem 2 offset strategy")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="exactly check an array set document")
    p.add_argument("set_file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example1", help="rebuild and verify the (9,2,8) worked example")
    p.set_defaults(func=cmd_example1)

    p = sub.add_parser("sweep", help="build and verify every tuple within bounds")
    p.add_argument("--bounds")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("aacf-dump", help="write the set autocorrelation sum at every shift")
    p.add_argument("set_file")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_aacf_dump)

    p = sub.add_parser("compare", help="compare achievable parameters against prior constructions")
    p.add_argument("--bounds")
    p.add_argument("--output", "-o", help="also write every catalog row as CSV")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        _err(f"error: {exc}")
        return EXIT_IO
    except GCASError as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID if isinstance(exc, (ParameterError, ValidationError)) else EXIT_INTERNAL
    except BrokenPipeError:
        # downstream reader (e.g. ``head``) closed early; not an error
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
