"""Command-line surface: valuation series, verification targets, figure data.

Exit codes follow the verification convention throughout: 0 when every
check was consistent, 1 when a counterexample was found, 2 when some
instance was inconclusive, 64 on usage errors.  CSV output is UTF-8 with
LF line endings, a header row and no trailing whitespace; an infinite
valuation serializes as an empty CSV field and as "inf" in JSON.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import approx, levels, padic, sequences, stirling
from .padic import INFINITE
from .reports import ConjectureReport

EX_OK = 0
EX_USAGE = 64

M_MAX_ENV = "STIRVAL_M_MAX"


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract here is 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    return "" if value is INFINITE else str(value)


def _emit_csv(header: list[str], rows, out: str | None) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(report: ConjectureReport, out: str | None) -> None:
    text = report.to_json() + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _n_range(parser: _Parser, args) -> range:
    if args.n is not None:
        if args.n_min is not None or args.n_max is not None:
            parser.error("give either --n or --n-min/--n-max, not both")
        return range(args.n, args.n + 1)
    if args.n_min is None or args.n_max is None:
        parser.error("need --n, or both --n-min and --n-max")
    if args.n_min > args.n_max:
        parser.error("--n-min must not exceed --n-max")
    return range(args.n_min, args.n_max + 1)


def _cmd_val(parser: _Parser, args) -> int:
    ns = _n_range(parser, args)
    series = args.series
    if series == "stirling":
        if args.k is None:
            parser.error("--series stirling requires --k")
        vals = dict(stirling.get_engine(args.k).val2_range(ns.start, ns.stop))
        rows = [(n, vals[n]) for n in ns]
    elif series == "factorial":
        rows = [(n, padic.legendre_factorial_val(args.p, n)) for n in ns]
    elif series == "int":
        rows = [(n, padic.nu_int(args.p, n)) for n in ns]
    elif series == "cohen":
        if args.k is None:
            parser.error("--series cohen requires --k")
        if ns.start < 1:
            parser.error("cohen series needs n >= 1")
        rows = []
        total = Fraction(0)
        for j in range(1, ns.stop):
            total += Fraction(1 << j, j**args.k)
            if j in ns:
                rows.append((j, padic.nu_rat(2, total)))
    else:  # unreachable: argparse restricts choices
        parser.error(f"unknown series {series}")
    _emit_csv(["n", "value"], rows, args.out)
    return EX_OK


def _cmd_verify(parser: _Parser, args) -> int:
    target = args.target
    if target == "main-conjecture":
        if args.k is None:
            parser.error("main-conjecture requires --k")
        report = levels.verify_main_conjecture(args.k, args.levels, args.samples)
    elif target == "k5-theorem":
        report = levels.k5_structure_report(args.levels, args.samples, args.i_max)
    elif target == "exceptional":
        scan = levels.exceptional_indices(args.i_max)
        report = ConjectureReport("exceptional indices", params={"i_max": args.i_max})
        report.details["indices"] = scan.indices
        report.details["pattern"] = scan.matches_pattern
        report.record(
            scan.matches_pattern,
            {"indices": scan.indices, "expected_pattern": "32j+7"},
        )
    elif target == "approx":
        report = approx.approx_report(args.m_max)
    elif target == "clarke":
        report = sequences.clarke_battery(
            args.scan_n_max, args.k_max, args.n_max, args.precision
        )
    elif target == "identities":
        report = stirling.identity_battery(args.n_max, args.q_max, args.k_max)
    elif target == "lemmas":
        report = padic.power_lemma_report(args.m_max)
    elif target == "alm":
        report = sequences.a_lm_val_check(args.l_max, args.m_max)
    elif target == "cohen":
        report = sequences.cohen_check(args.m_min, args.m_max)
    else:  # unreachable
        parser.error(f"unknown target {target}")
    _emit_json(report, args.out)
    return report.exit_code


def _cmd_figure(parser: _Parser, args) -> int:
    name = args.name
    n_max = args.n_max
    if name == "val-n":
        rows = [(n, padic.nu_int(2, n)) for n in range(1, n_max + 1)]
        header = ["n", "value"]
    elif name == "val-factorial":
        rows = [(m, padic.legendre_factorial_val(2, m)) for m in range(1, n_max + 1)]
        header = ["m", "value"]
    elif name == "err-factorial":
        rows = [(m, padic.digit_sum(2, m)) for m in range(1, n_max + 1)]
        header = ["m", "s2"]
    elif name == "cohen":
        k = args.k if args.k is not None else 1
        rows = []
        total = Fraction(0)
        for n in range(1, n_max + 1):
            total += Fraction(1 << n, n**k)
            v = padic.nu_rat(2, total)
            rows.append((n, v, v - n))
        header = ["n", "value", "err"]
    elif name == "stirling-k":
        if args.k is None:
            parser.error("figure stirling-k requires --k")
        rows = list(stirling.get_engine(args.k).val2_range(args.k, n_max + 1))
        header = ["n", "value"]
    elif name == "wannemacker-diff":
        if args.k is None:
            parser.error("figure wannemacker-diff requires --k")
        s_k = padic.digit_sum(2, args.k)
        rows = [
            (n, v - s_k + padic.digit_sum(2, n))
            for n, v in stirling.get_engine(args.k).val2_range(args.k, n_max + 1)
        ]
        header = ["n", "gap"]
    else:  # unreachable
        parser.error(f"unknown figure {name}")
    _emit_csv(header, rows, args.out)
    return EX_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="stirval",
        description="Exact 2-adic valuations of Stirling numbers: series, "
        "verification targets and figure data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("val", help="emit a valuation series as CSV")
    p_val.add_argument(
        "--series", required=True, choices=["stirling", "factorial", "int", "cohen"]
    )
    p_val.add_argument("--k", type=int, help="order (stirling) or weight (cohen)")
    p_val.add_argument("--p", type=int, default=2, help="prime (factorial/int series)")
    p_val.add_argument("--n", type=int, help="single index")
    p_val.add_argument("--n-min", type=int, help="range start (inclusive)")
    p_val.add_argument("--n-max", type=int, help="range end (inclusive)")
    p_val.add_argument("--out", help="output path (default: stdout)")

    p_verify = sub.add_parser("verify", help="run a verification target, emit JSON")
    p_verify.add_argument(
        "target",
        choices=[
            "main-conjecture",
            "k5-theorem",
            "exceptional",
            "approx",
            "clarke",
            "identities",
            "lemmas",
            "alm",
            "cohen",
        ],
    )
    p_verify.add_argument("--k", type=int, help="Stirling order (main-conjecture)")
    p_verify.add_argument("--levels", type=int, default=10, help="deepest level to build")
    p_verify.add_argument("--samples", type=int, default=64, help="members checked per class")
    p_verify.add_argument("--i-max", type=int, default=200, help="index scan bound")
    p_verify.add_argument("--m-max", type=int, default=None, help="target-specific bound")
    p_verify.add_argument("--m-min", type=int, default=4, help="cohen: first exponent")
    p_verify.add_argument("--l-max", type=int, default=40, help="alm: bound on l")
    p_verify.add_argument("--n-max", type=int, default=None, help="target-specific bound")
    p_verify.add_argument("--q-max", type=int, default=10, help="identities: exponent bound")
    p_verify.add_argument("--k-max", type=int, default=None, help="target-specific bound")
    p_verify.add_argument(
        "--scan-n-max", type=int, default=500, help="clarke: t-sum scan bound"
    )
    p_verify.add_argument("--precision", type=int, default=24, help="clarke: lift precision")
    p_verify.add_argument("--out", help="output path (default: stdout)")

    p_fig = sub.add_parser("figure", help="emit figure data as CSV")
    p_fig.add_argument(
        "name",
        choices=[
            "val-n",
            "val-factorial",
            "err-factorial",
            "cohen",
            "stirling-k",
            "wannemacker-diff",
        ],
    )
    p_fig.add_argument("--k", type=int, help="order/weight where applicable")
    p_fig.add_argument("--n-max", type=int, required=True, help="largest index")
    p_fig.add_argument("--out", help="output path (default: stdout)")
    return parser


_VERIFY_DEFAULTS = {
    # target: (m_max, n_max, k_max)
    "approx": (2000, None, None),
    "clarke": (None, 2000, 5),
    "identities": (None, 300, 64),
    "lemmas": (20, None, None),
    "alm": (40, None, None),
    "cohen": (12, None, None),
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    env_m_max = os.environ.get(M_MAX_ENV)
    if env_m_max is not None:
        try:
            stirling.set_default_m_max(int(env_m_max))
        except ValueError as exc:
            parser.error(f"bad {M_MAX_ENV}: {exc}")

    if args.command == "verify":
        defaults = _VERIFY_DEFAULTS.get(args.target)
        if defaults:
            m_max, n_max, k_max = defaults
            if args.m_max is None:
                args.m_max = m_max
            if args.n_max is None:
                args.n_max = n_max
            if args.k_max is None:
                args.k_max = k_max
    try:
        if args.command == "val":
            return _cmd_val(parser, args)
        if args.command == "verify":
            return _cmd_verify(parser, args)
        return _cmd_figure(parser, args)
    except stirling.PrecisionExceeded as exc:
        sys.stderr.write(f"stirval: inconclusive: {exc}\n")
        return 2
    except ValueError as exc:
        parser.error(str(exc))
        return EX_USAGE  # unreachable; parser.error raises SystemExit


if __name__ == "__main__":
    sys.exit(main())
