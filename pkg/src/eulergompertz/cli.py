"""``eulergompertz`` command line: build, verify, converge, baseline.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 precision infeasible.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import oracles
from .analysis import (
    BASELINE_COLUMNS,
    BUILD_COLUMNS,
    CONVERGE_COLUMNS,
    VERIFY_COLUMNS,
    VERIFY_SUITES,
    FamilySpec,
    RunManifest,
    Table,
    UsageError,
    baseline_rows,
    build_row,
    converge_rows,
    default_timestamp,
    format_n_range,
    parse_family,
    parse_int_list,
    parse_rational,
    render,
    run_verify,
)

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2 as well; keep one path
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, family_default: str | None = "euler") -> None:
    p.add_argument("--family", default=family_default, help="euler|gompertz|laguerre1|euler-p:<p>|pilehrood:<a>")
    p.add_argument("--x", default="1", help="positive rational argument, e.g. 1 or 3/2")
    p.add_argument("--n-max", type=int, default=None, help="use indices 0..N (negative gives an empty range)")
    p.add_argument("--n-list", default=None, help="comma separated indices or ranges, e.g. 1,2,10..20")
    p.add_argument("--precision-bits", type=int, default=256)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--timestamp", default=None, help="manifest timestamp (default SOURCE_DATE_EPOCH or now)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent rows")
    p.add_argument("--max-working-bits", type=int, default=None, help="oracle precision cap")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eulergompertz", description="Rational approximants to gamma + ln x and exp(x) E1(x).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="exact numerator and denominator coefficients")
    _common(b)

    v = sub.add_parser("verify", help="exact verification suites")
    _common(v, family_default=None)
    v.add_argument("--suite", choices=VERIFY_SUITES + ("all",), required=True)

    c = sub.add_parser("converge", help="error and growth measurements against the asymptotic models")
    _common(c)
    c.add_argument("--x-scale", choices=("n",), default=None, help="use x*n at index n")

    bl = sub.add_parser("baseline", help="compare families against the scalar baseline at x = 1")
    _common(bl, family_default=None)
    bl.add_argument("--a-list", default="2,3")
    bl.add_argument("--p-list", default="1,2")
    return parser


def _indices(args, default_max: int | None) -> list[int]:
    if args.n_list is not None:
        return parse_int_list(args.n_list)
    n_max = args.n_max if args.n_max is not None else default_max
    if n_max is None:
        raise UsageError("give --n-max or --n-list")
    return list(range(0, n_max + 1))


def _manifest(args, family: FamilySpec | None, ns: Sequence[int], x: Fraction) -> RunManifest:
    return RunManifest(
        command=args.command,
        family="" if family is None else family.name,
        parameter=None if family is None else family.parameter,
        x=str(x),
        n_range=format_n_range(ns),
        precision_bits=args.precision_bits,
        output_format=args.format,
        timestamp=args.timestamp or default_timestamp(),
    )


def _emit(table: Table, out: str | None) -> None:
    text = render(table)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _run(args) -> int:
    if args.precision_bits < oracles.MIN_PRECISION_BITS:
        raise UsageError(f"--precision-bits must be >= {oracles.MIN_PRECISION_BITS}")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if args.max_working_bits is not None:
        oracles.MAX_WORKING_BITS = args.max_working_bits
    family = parse_family(args.family) if args.family else None
    x = parse_rational(args.x)
    if family is not None and family.name == "pilehrood" and x != 1:
        raise UsageError("the pilehrood baseline is defined at x = 1 only")

    if args.command == "build":
        ns = _indices(args, None)
        rows = [build_row(family, n) for n in ns]
        _emit(Table(_manifest(args, family, ns, x), BUILD_COLUMNS, rows), args.out)
        return EXIT_OK

    if args.command == "verify":
        ns = _indices(args, 50)
        suites = VERIFY_SUITES if args.suite == "all" else (args.suite,)
        reports = []
        for s in suites:
            fam = family
            if args.suite == "all" and s == "recurrence" and fam is not None and fam.name not in ("euler", "gompertz"):
                fam = None
            reports.append(run_verify(s, ns, fam))
        table = Table(_manifest(args, family, ns, x), VERIFY_COLUMNS, [r.as_row() for r in reports])
        _emit(table, args.out)
        for r in reports:
            status = "pass" if r.passed else f"FAIL ({r.first_counterexample})"
            print(f"{r.suite}: {status}, {r.checks} checks, {len(r.anomalies)} anomalies", file=sys.stderr)
        return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED

    if args.command == "converge":
        ns = _indices(args, None)
        if args.x_scale and family.name == "pilehrood":
            raise UsageError("--x-scale is not available for the pilehrood baseline")
        rows = converge_rows(family, ns, x, args.precision_bits, x_scale_n=bool(args.x_scale), jobs=args.jobs)
        table = Table(_manifest(args, family, ns, x), CONVERGE_COLUMNS, [r.as_row() for r in rows])
        _emit(table, args.out)
        return EXIT_OK

    # baseline
    if x != 1:
        raise UsageError("baseline runs at x = 1")
    ns = _indices(args, None)
    a_list, p_list = parse_int_list(args.a_list), parse_int_list(args.p_list)
    if any(a < 1 for a in a_list):
        raise UsageError("pilehrood parameter a must be >= 1")
    rows = baseline_rows(ns, a_list, p_list, args.precision_bits, jobs=args.jobs)
    table = Table(_manifest(args, None, ns, x), BASELINE_COLUMNS, rows, extra={"a_list": a_list, "p_list": p_list})
    _emit(table, args.out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    cap = oracles.MAX_WORKING_BITS
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(f"eulergompertz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except oracles.PrecisionInfeasible as exc:
        print(f"eulergompertz: precision infeasible: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    finally:
        oracles.MAX_WORKING_BITS = cap


if __name__ == "__main__":
    sys.exit(main())
