"""Command-line front end.

Exit codes: 0 success, 1 a verification found failures, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import classsums, ecfp, qseries, traceformula
from .arith import sieve_primes
from .hurwitz import HurwitzTable, TableFormatError, hurwitz_single, hurwitz_table, load_table, save_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PRIME_TARGETS = {"full": "FULL", "t1": "T1", "t2": "T2", "t3": "T3", "t4": "T4", "t6": "T6", "p42": "P42"}
VERIFY_TARGETS = [*PRIME_TARGETS, "t5", "hurwitz-kronecker", "techprop", "trace7"]

SCAN_MARGIN = 2000


class UsageError(Exception):
    pass


def _emit(rows: list[dict], columns: list[str], fmt: str, plain_lines: list[str], out) -> None:
    if fmt == "json":
        out.write(json.dumps({"results": rows}, sort_keys=True, default=str) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow(["" if r.get(c) is None else str(r.get(c)) for c in columns])
        out.write(buf.getvalue())
    else:
        out.write("\n".join(plain_lines) + "\n")


def get_table(n_needed: int, cache: str | None, workers: int) -> HurwitzTable:
    """Load the cache if it covers n_needed, otherwise build (and store) a table."""
    if cache and os.path.exists(cache):
        try:
            t = load_table(cache)
        except TableFormatError as exc:
            print(f"warning: ignoring unreadable cache ({exc})", file=sys.stderr)
        else:
            if t.n_max >= n_needed:
                return t
    t = hurwitz_table(n_needed, workers=workers)
    if cache:
        save_table(t, cache)
    return t


def cmd_hurwitz(args, out) -> int:
    if args.n < 0:
        raise UsageError("N must be non-negative")
    h = hurwitz_single(args.n)
    _emit([{"N": args.n, "H": str(h)}], ["N", "H"], args.format, [str(h)], out)
    return EXIT_OK


def cmd_sum(args, out) -> int:
    radius = classsums.Radius.PLAIN_N if args.plain else classsums.Radius.FOUR_N
    if args.n < 1 or args.m < 1:
        raise UsageError("need n >= 1 and m >= 1")
    q = classsums.SumQuery(args.n, args.m, args.c, radius)
    big = 4 * q.n if radius is classsums.Radius.FOUR_N else q.n
    s = classsums.restricted_sum(q, get_table(big, args.cache, args.workers))
    row = {"n": q.n, "m": q.m, "c": q.c, "radius": radius.value, "sum": str(s)}
    _emit([row], ["n", "m", "c", "radius", "sum"], args.format, [str(s)], out)
    return EXIT_OK


def cmd_table(args, out) -> int:
    if args.nmax < 0:
        raise UsageError("--nmax must be non-negative")
    t = hurwitz_table(args.nmax, workers=args.workers)
    save_table(t, args.out)
    row = {"n_max": t.n_max, "path": args.out}
    _emit([row], ["n_max", "path"], args.format, [f"wrote 12*H(N) for N <= {t.n_max} to {args.out}"], out)
    return EXIT_OK


def _verify(args):
    target = args.target
    if target in PRIME_TARGETS or target == "trace7":
        if args.pmax < 5:
            raise UsageError(f"--pmax {args.pmax} leaves no primes to sweep; use --pmax >= 5")
        primes = sieve_primes(args.pmax)
        table = get_table(4 * args.pmax, args.cache, args.workers)
        if target == "trace7":
            rep = traceformula.verify_prop42(primes, table)
            return rep, "admissible primes"
        return classsums.verify_theorem(PRIME_TARGETS[target], primes, table, workers=args.workers), "primes"
    if target == "t5":
        if args.nmax < 5:
            raise UsageError("--nmax must be at least 5")
        table = get_table(args.nmax, args.cache, args.workers)
        return classsums.verify_theorem5(range(1, args.nmax + 1), table), "qualifying n"
    if target == "hurwitz-kronecker":
        if args.nmax < 1:
            raise UsageError("--nmax must be at least 1")
        table = get_table(4 * args.nmax, args.cache, args.workers)
        return classsums.verify_hurwitz_kronecker(range(1, args.nmax + 1), table), "N"
    if target == "techprop":
        if args.terms < 1:
            raise UsageError("--terms must be at least 1")
        table = get_table(args.terms, args.cache, args.workers)
        return qseries.verify_techprop(table, args.terms), "n"
    raise UsageError(f"unknown target {target!r}")


def cmd_verify(args, out) -> int:
    rep, unit = _verify(args)
    rep.name = args.target
    line = f"{args.target}: checked {rep.items} {unit}, {len(rep.failures)} failures ({rep.checks} identities)"
    lines = [line] + ([f"first failure: {rep.failures[0]}"] if rep.failures else [])
    row = rep.as_dict()
    row["first_failure"] = rep.failures[0] if rep.failures else None
    row["failures"] = len(rep.failures)
    _emit([row], ["name", "items", "checks", "failures", "ok", "first_failure"], args.format, lines, out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_scan(args, out) -> int:
    if args.m not in (5, 7):
        raise UsageError("--m must be 5 or 7")
    table = get_table(4 * (args.pmax + SCAN_MARGIN), args.cache, args.workers)
    try:
        fits = classsums.scan_conjectures(args.m, args.pmin, args.pmax, table)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows, lines = [], []
    for f in fits:
        rows.append({
            "p_residue": f.p_residue,
            "c": f.c,
            "alpha": f.alpha if f.fitted else None,
            "beta": f.beta if f.fitted else None,
            "gamma": f.gamma if f.fitted else None,
            "status": "Fitted" if f.fitted else "NO_PATTERN",
        })
        c = f"+-{f.c}" if f.c else "0"
        lines.append(f"p={f.p_residue} (mod {args.m})  c={c:<4} {f.formula()}")
    _emit(rows, ["p_residue", "c", "alpha", "beta", "gamma", "status"], args.format, lines, out)
    return EXIT_OK


def cmd_ec(args, out) -> int:
    p = args.p
    try:
        if args.torsion is not None:
            n = ecfp.torsion_class_counts(p, f"order-{args.torsion}")
            _emit([{"p": p, "torsion": args.torsion, "classes": n}], ["p", "torsion", "classes"],
                  args.format, [str(n)], out)
            return EXIT_OK
        summary = ecfp.trace_spectrum(p)
    except ecfp.UnsupportedCharacteristic as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [{"p": p, "r": r, "classes": k} for r, k in sorted(summary.trace_counts.items())]
    lines = [f"p={p}: {summary.total} isomorphism classes"]
    lines += [f"  r={r:>4}  #E={p + 1 - r:>4}  classes={k}" for r, k in sorted(summary.trace_counts.items())]
    _emit(rows, ["p", "r", "classes"], args.format, lines, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["plain", "csv", "json"], default="plain")
    common.add_argument("--cache", default=None, help="HURWITZ12 table file to reuse/create")
    common.add_argument("--workers", type=int, default=1)

    parser = argparse.ArgumentParser(prog="hurwitzsums", description="Hurwitz class number sums")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hurwitz", parents=[common], help="print H(N) as an exact fraction")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("sum", parents=[common], help="restricted sum of H over r = c (mod m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--plain", action="store_true", help="sum H(n - r^2) over r^2 < n")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("table", parents=[common], help="write a HURWITZ12 table")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="sweep a theorem or identity")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--pmax", type=int, default=10_000)
    p.add_argument("--nmax", type=int, default=5_000)
    p.add_argument("--terms", type=int, default=2_000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="fit (a p + b)/g to every residue cell")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--pmax", type=int, default=20_000)
    p.add_argument("--pmin", type=int, default=11)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("ec", parents=[common], help="isomorphism-class census over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--torsion", type=int, choices=[2, 3, 4, 5, 7], default=None)
    p.set_defaults(func=cmd_ec)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.workers < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
