"""Command-line front end.

Exit status: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .approximant import error_table
from .exactfield import format_rational
from .precision import MIN_DIGITS, PrecisionContext, default_context
from .series_engine import compute_coefficients, stirling_coefficients
from .verification import run_suite

SCHEMA_VERSION = "1"
MAX_COEFFS = 200
ERROR_DIGITS = 6


class UsageError(Exception):
    pass


def _record(command: str, payload: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "payload": payload}


def _dump_json(record: dict) -> str:
    return json.dumps(record, indent=2, sort_keys=False) + "\n"


def _dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _parse_s(text: str):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid s value {text!r}")
    if value <= 0:
        raise UsageError(f"s must be positive, got {text}")
    return value.numerator if value.denominator == 1 else value


def _parse_list(text: str, convert) -> list:
    items = [t for t in text.split(",") if t.strip()]
    if not items:
        raise UsageError("empty list")
    return [convert(t.strip()) for t in items]


def _context(args) -> PrecisionContext:
    if args.digits is not None:
        digits = args.digits
    else:
        try:
            digits = default_context().digits
        except ValueError as exc:
            raise UsageError(f"bad STIRLING_DIGITS: {exc}")
    if digits < MIN_DIGITS:
        raise UsageError(f"--digits must be at least {MIN_DIGITS}")
    return PrecisionContext(digits)


def _s_text(s) -> str:
    return format_rational(Fraction(s))


def cmd_coeffs(args) -> tuple[str, int]:
    if not 0 <= args.max <= MAX_COEFFS:
        raise UsageError(f"--max must lie in 0..{MAX_COEFFS}")
    table = compute_coefficients(args.max)
    if args.format == "text":
        return "".join(f"a_{n} = {a}\n" for n, a in enumerate(table)), 0
    rows = [
        {
            "index": n,
            "rational_part": format_rational(a.p),
            "sqrt2_part": format_rational(a.q),
            "value": str(a),
        }
        for n, a in enumerate(table)
    ]
    if args.format == "json":
        return _dump_json(_record("coeffs", {"max": args.max, "coefficients": rows})), 0
    return _dump_csv(
        ["index", "rational_part", "sqrt2_part", "value"],
        [[r["index"], r["rational_part"], r["sqrt2_part"], r["value"]] for r in rows],
    ), 0


def cmd_stirling(args) -> tuple[str, int]:
    if not 0 <= args.max <= MAX_COEFFS // 2:
        raise UsageError(f"--max must lie in 0..{MAX_COEFFS // 2}")
    series = stirling_coefficients(compute_coefficients(2 * args.max))
    if args.format == "text":
        return "".join(f"c_{k} = {format_rational(c)}\n" for k, c in enumerate(series)), 0
    rows = [{"index": k, "value": format_rational(c)} for k, c in enumerate(series)]
    if args.format == "json":
        return _dump_json(_record("stirling", {"max": args.max, "coefficients": rows})), 0
    return _dump_csv(["index", "value"], [[r["index"], r["value"]] for r in rows]), 0


def _report_rows(report, ctx: PrecisionContext) -> list[dict]:
    return [
        {
            "s": _s_text(r.s),
            "order": r.order,
            "reference": ctx.nstr(r.reference),
            "approx": ctx.nstr(r.approx),
            "rel_error": ctx.nstr(r.rel_error, ERROR_DIGITS),
            "scaled_error": ctx.nstr(r.scaled_error, ERROR_DIGITS),
        }
        for r in report.rows
    ]


def _render_report(command: str, rows: list[dict], ctx: PrecisionContext, fmt: str) -> str:
    if fmt == "json":
        payload = {"digits": ctx.digits, "error_digits": ERROR_DIGITS, "rows": rows}
        return _dump_json(_record(command, payload))
    header = ["s", "order", "reference", "approx", "rel_error", "scaled_error"]
    if fmt == "csv":
        return _dump_csv(header, [[r[h] for h in header] for r in rows])
    lines = [
        f"s={r['s']} order={r['order']} reference={r['reference']} approx={r['approx']} "
        f"rel_error={r['rel_error']} scaled_error={r['scaled_error']}\n"
        for r in rows
    ]
    return "".join(lines)


def _series_for(orders: list[int]):
    top = max(orders)
    if top < 0 or top > MAX_COEFFS // 2:
        raise UsageError(f"orders must lie in 0..{MAX_COEFFS // 2}")
    if min(orders) < 0:
        raise UsageError("orders must be non-negative")
    return stirling_coefficients(compute_coefficients(2 * top))


def cmd_approx(args) -> tuple[str, int]:
    ctx = _context(args)
    s = _parse_s(args.s)
    series = _series_for([args.order])
    report = error_table([s], [args.order], series, ctx)
    return _render_report("approx", _report_rows(report, ctx), ctx, args.format), 0


def cmd_table(args) -> tuple[str, int]:
    ctx = _context(args)
    s_list = _parse_list(args.s_list, _parse_s)
    orders = _parse_list(args.orders, _parse_order)
    series = _series_for(orders)
    report = error_table(s_list, orders, series, ctx)
    return _render_report("table", _report_rows(report, ctx), ctx, args.format), 0


def _parse_order(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"invalid order {text!r}")


def cmd_verify(args) -> tuple[str, int]:
    ctx = _context(args)
    checks = run_suite(args.suite, ctx)
    status = 0 if all(c.passed for c in checks) else 1
    if args.format == "json":
        payload = {
            "suite": args.suite,
            "digits": ctx.digits,
            "passed": status == 0,
            "checks": [
                {"name": c.name, "passed": c.passed, "tolerance": c.tolerance, "measured": c.measured}
                for c in checks
            ],
        }
        return _dump_json(_record("verify", payload)), status
    if args.format == "csv":
        return _dump_csv(
            ["name", "passed", "tolerance", "measured"],
            [[c.name, "PASS" if c.passed else "FAIL", c.tolerance, c.measured] for c in checks],
        ), status
    lines = []
    for c in checks:
        if c.measured == "EXACT MATCH":
            lines.append(f"{c.name}: EXACT MATCH\n")
        else:
            verdict = "PASS" if c.passed else "FAIL"
            lines.append(f"{c.name}: {verdict} (tolerance {c.tolerance}, measured {c.measured})\n")
    lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed\n")
    return "".join(lines), status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stirling",
        description="Exact Stirling-series coefficients and numerical verification.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument(
        "--digits",
        type=int,
        default=None,
        help="working precision in significant digits (default 64, or $STIRLING_DIGITS)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="MacLaurin coefficients a_0..a_max of y(v)")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("stirling", parents=[common], help="Stirling series coefficients c_0..c_max")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("approx", parents=[common], help="truncated Stirling approximation at one s")
    p.add_argument("--s", required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("table", parents=[common], help="error table over s values and orders")
    p.add_argument("--s-list", required=True, help="comma-separated s values, e.g. 10,20,40")
    p.add_argument("--orders", required=True, help="comma-separated orders, e.g. 0,1,5")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("identities", "oracles", "limits", "all"), default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, status = args.func(args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog} {args.command}: error: {exc}\n")
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
