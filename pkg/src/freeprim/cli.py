"""Command-line entry point.

Exit codes: 0 success or "true", 1 "false" verdict or count mismatch,
2 parse/usage error, 3 guardrail refusal, 4 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import f2prim, growth, hyperbolic
from .whitehead import MAX_RANK, format_trace, minimize
from .words import WordSyntaxError, count_ball, cyclic_reduce, format_word, parse_word

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_GUARDRAIL, EXIT_DOMAIN = 0, 1, 2, 3, 4

# brute-force scans larger than the ball of radius 16 in F_2 need --force
GUARDRAIL_BALL = count_ball(2, 16)


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _threads(value: str) -> int:
    if value == "auto":
        return os.cpu_count() or 1
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'auto', got {value!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("threads must be positive")
    return n


def _pair(kind):
    def parse(value: str):
        parts = value.split(",")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"expected two comma-separated values, got {value!r}")
        try:
            return tuple(kind(p) for p in parts)
        except ValueError:
            raise argparse.ArgumentTypeError(f"could not parse {value!r}")

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeprim", description="Primitive elements of free groups and their growth."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("is-primitive", help="decide primitivity with Whitehead descent")
    p.add_argument("word", help="word text, e.g. aabAB (uppercase = inverse)")
    p.add_argument("--rank", type=int, default=None)

    def common(p, default_set="primitive"):
        p.add_argument("--rank", type=int, default=2)
        p.add_argument("--max-length", type=int, required=True)
        p.add_argument("--set", choices=f2prim.SETS, default=default_set)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--threads", type=_threads, default=1)
        p.add_argument("--force", action="store_true", help="override the brute-force size guardrail")

    p = sub.add_parser("count", help="per-length and cumulative counts")
    common(p)
    p.add_argument("--method", choices=("convolution", "bruteforce", "both"), default="convolution")

    p = sub.add_parser("growth", help="growth-rate report (JSON)")
    common(p)
    p.set_defaults(format="json")
    p.add_argument("--method", choices=("convolution", "bruteforce"), default="convolution")
    p.add_argument("--fit-range", type=_pair(int), default=None, metavar="LO,HI")

    p = sub.add_parser("geodesics", help="simple closed geodesic census on a punctured torus")
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--structure", choices=("modular", "traces"), default="modular")
    p.add_argument("--traces", type=_pair(float), default=None, metavar="X,Y")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=_threads, default=1)
    return parser


def _check_rank(rank):
    if rank is not None and not 2 <= rank <= MAX_RANK:
        raise CliError(f"rank must be in [2, {MAX_RANK}]", EXIT_PARSE)


def _check_length(N, minimum=1):
    if N < minimum:
        raise CliError(f"--max-length must be >= {minimum}", EXIT_PARSE)


def _guardrail(args):
    if not args.force and count_ball(args.rank, args.max_length) > GUARDRAIL_BALL:
        raise CliError(
            f"brute force over rank {args.rank} up to length {args.max_length} is too large; "
            "pass --force to run it anyway",
            EXIT_GUARDRAIL,
        )


def _table(args, method):
    try:
        if method == "convolution":
            return f2prim.convolution_table(args.set, args.max_length, args.rank)
        _guardrail(args)
        return f2prim.bruteforce_table(args.set, args.max_length, args.rank, args.threads)
    except ValueError as e:
        raise CliError(str(e), EXIT_PARSE)


def cmd_is_primitive(args, out) -> int:
    _check_rank(args.rank)
    try:
        w = parse_word(args.word, args.rank)
    except WordSyntaxError as e:
        raise CliError(str(e), EXIT_PARSE)
    core, conjugator = cyclic_reduce(w)
    if core:
        minimal, trace = minimize(core, args.rank)
        verdict = len(minimal) == 1
    else:
        minimal, trace, verdict = core, [], False
    out.write(f"{'true' if verdict else 'false'}\n")
    out.write(f"cyclic reduction: {format_word(core) or '1'} (conjugator {format_word(conjugator) or '1'})\n")
    out.write(f"minimal: {format_word(minimal) or '1'}\n")
    out.write(f"trace: {format_trace(trace)}\n")
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_count(args, out) -> int:
    _check_rank(args.rank)
    _check_length(args.max_length)
    if args.method != "both":
        table = _table(args, args.method)
        if args.format == "csv":
            out.write(table.to_csv(cumulative=True))
        else:
            data = {"set": args.set, "method": args.method, **table.to_dict(cumulative=True)}
            out.write(json.dumps(data, indent=2) + "\n")
        return EXIT_OK

    conv = _table(args, "convolution")
    brute = _table(args, "bruteforce")
    ns = sorted(conv.per_length)
    match = {n: conv.per_length[n] == brute.per_length.get(n) for n in ns}
    cumulative = conv.cumulative_table()
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "count", "cumulative", "bruteforce", "match"])
        for n in ns:
            writer.writerow([n, conv.per_length[n], cumulative[n], brute.per_length[n], str(match[n]).lower()])
        out.write(buf.getvalue())
    else:
        data = {"set": args.set, "method": "both", **conv.to_dict(cumulative=True)}
        data["bruteforce"] = {str(n): str(brute.per_length[n]) for n in ns}
        data["match"] = {str(n): match[n] for n in ns}
        out.write(json.dumps(data, indent=2) + "\n")
    return EXIT_OK if all(match.values()) else EXIT_FALSE


def default_checkpoints(N: int) -> list:
    points = list(range(10, N + 1, 10))
    if not points or points[-1] != N:
        points.append(N)
    return points


def cmd_growth(args, out) -> int:
    _check_rank(args.rank)
    _check_length(args.max_length, 3)
    N = args.max_length
    table = _table(args, args.method)
    lo, hi = args.fit_range or (max(1, N // 2), N)
    if not 1 <= lo < hi <= N:
        raise CliError(f"fit range must satisfy 1 <= lo < hi <= {N}", EXIT_PARSE)
    try:
        report = growth.growth_report(
            args.set,
            table,
            default_checkpoints(N),
            (lo, hi),
            cumulative_fit=args.set == "cyc-primitive",
        )
    except ValueError as e:
        raise CliError(str(e), EXIT_DOMAIN)
    report["method"] = args.method
    out.write(json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_geodesics(args, out, err) -> int:
    _check_length(args.max_length)
    try:
        if args.structure == "modular" and args.traces is None:
            structure = hyperbolic.modular_torus()
        else:
            if args.traces is None:
                raise CliError("--structure traces needs --traces X,Y", EXIT_PARSE)
            structure = hyperbolic.from_traces(*args.traces)
    except hyperbolic.DomainError as e:
        raise CliError(str(e), EXIT_DOMAIN)

    census = hyperbolic.geodesic_census(structure, args.max_length)
    report = hyperbolic.comparability(structure, args.max_length)
    try:
        fit = hyperbolic.census_growth_fit(census, report.min_ratio)
    except ValueError as e:
        fit = {"exponent": None, "reason": str(e)}

    if args.format == "json":
        data = {
            "census": census.to_dict(),
            "quadratic_fit": fit,
            "comparability": report.to_dict(),
        }
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(census.to_csv())
        err.write(f"# structure: {census.structure}\n")
        err.write(f"# geodesics: {len(census.entries)} (unoriented), L_max: {census.L_max:.9f}\n")
        if fit["exponent"] is None:
            err.write(f"# quadratic fit: unavailable ({fit['reason']})\n")
        else:
            err.write(f"# quadratic fit exponent: {fit['exponent']:.6f} over L in "
                      f"[{fit['window'][0]:.6f}, {fit['window'][1]:.6f})\n")
        err.write(f"# comparability: min {report.min_ratio:.9f}, max {report.max_ratio:.9f}, "
                  f"C_emp {report.C_emp:.9f}\n")
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "is-primitive":
            return cmd_is_primitive(args, out)
        if args.command == "count":
            return cmd_count(args, out)
        if args.command == "growth":
            return cmd_growth(args, out)
        return cmd_geodesics(args, out, err)
    except CliError as e:
        err.write(f"freeprim: error: {e}\n")
        return e.code


if __name__ == "__main__":
    sys.exit(main())
