"""Command-line front end: named verification suites and comparison tables.

    ferrofock suite <name> [--seed S] [--tol T] [--max-size K]
                           [--json PATH] [--quiet]
    ferrofock table <kind> [--size D] [--t VALUE] [--seed S] [--json PATH]

Suite names: symfun kp bkp fock phase iboson qboson xxz felderhof height
genfun all.  Table kinds: macmahon vuletic strict dwpf scalar.

Exit status: 0 all checks pass, 1 any check failed, 2 usage error.
The environment variable FERROFOCK_SEED overrides the default seed.
"""

from __future__ import annotations

import argparse
import cmath
import json
import os
import random
import sys
from fractions import Fraction

from . import __version__
from .exactnum import LaurentPoly
from . import partitions as pt
from . import lattice as lat
from .suites import run_suite, UnknownSuite, SUITE_NAMES


def _default_seed():
    env = os.environ.get("FERROFOCK_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"ignoring non-integer FERROFOCK_SEED={env!r}", file=sys.stderr)
    return 0


def _print_report(report, quiet):
    if not quiet:
        for c in sorted(report.checks, key=lambda c: c["name"]):
            mark = "ok " if c["status"] == "pass" else "FAIL"
            print(f"[{mark}] {c['name']:<48} residual={c['residual']:<12} "
                  f"({c['runtime_ms']} ms)  {c['parameters']}")
    n_fail = sum(1 for c in report.checks if c["status"] != "pass")
    print(f"suite={report.suite} seed={report.seed} checks={len(report.checks)} "
          f"failed={n_fail} status={report.status}")


def cmd_suite(args):
    try:
        report = run_suite(args.name, seed=args.seed, tol=args.tol,
                           max_size=args.max_size)
    except UnknownSuite as exc:
        print(exc, file=sys.stderr)
        return 2
    _print_report(report, args.quiet)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.as_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report.status == "pass" else 1


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def _table_series(kind, d, tval):
    if kind == "macmahon":
        enum = pt.series_genfun_coeffs(d, Fraction(0))
        prod = pt.product_series_coeffs(d, Fraction(0))
        header = "MacMahon plane-partition series"
    elif kind == "strict":
        enum = pt.strict_series_coeffs(d)
        prod = pt.product_series_coeffs(d, Fraction(-1))
        header = "strict plane partitions with 2^p weights"
    else:
        t = LaurentPoly.var("t") if tval is None else Fraction(tval)
        enum = pt.series_genfun_coeffs(d, t)
        prod = pt.product_series_coeffs(d, t)
        header = "path-weighted plane partitions (Vuletic series)"
    rows = []
    for n, (a, b) in enumerate(zip(enum, prod)):
        same = (a - b).is_zero() if isinstance(a - b, LaurentPoly) else a == b
        rows.append({"degree": n, "enumeration": str(a), "product": str(b),
                     "agree": bool(same)})
    return header, rows


def _table_dwpf(N, seed):
    rng = random.Random(seed)
    g = complex(0.31, 0.17)
    ws = [complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3)) for _ in range(N)]
    vs = [complex(rng.uniform(1.0, 1.8), rng.uniform(-0.3, 0.3)) for _ in range(N)]
    spec = lat.ModelSpec("xxz", N, N, gamma=g, ws=tuple(ws))
    rows = []
    for n in range(1, N + 1):
        sub = lat.ModelSpec("xxz", n, n, gamma=g, ws=tuple(ws[:n]))
        zb = lat.dwpf_bruteforce(sub, vs[:n])
        zc = lat.dwpf_closed(sub, vs[:n], ws[:n], "izergin")
        rows.append({"N": n, "brute": f"{zb:.10g}", "izergin": f"{zc:.10g}",
                     "agree": bool(abs(zb - zc) <= 1e-9 * max(abs(zc), 1.0))})
    return "XXZ domain-wall partition function", rows


def _table_scalar(N, M, seed):
    rng = random.Random(seed)
    gff = 0.5j * cmath.pi
    ws = tuple(complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3))
               for _ in range(M))
    spec = lat.ModelSpec("xxz", M, N, gamma=gff, ws=ws)
    vs = lat.bethe_roots_decoupled(spec)
    rows = []
    for n in range(N + 1):
        us = [complex(rng.uniform(1.5, 2.2), rng.uniform(-0.3, 0.3))
              for _ in range(n)]
        sb = lat.scalar_product_bruteforce(spec, n, us, vs)
        sc = lat.scalar_product_closed(spec, n, us, vs)
        rows.append({"n": n, "brute": f"{sb:.10g}", "determinant": f"{sc:.10g}",
                     "agree": bool(abs(sb - sc) <= 1e-7 * max(abs(sb), 1.0))})
    return "XXZ Bethe scalar products at the free-fermion point", rows


def cmd_table(args):
    if args.kind in ("macmahon", "vuletic", "strict"):
        header, rows = _table_series(args.kind, args.size, args.t)
    elif args.kind == "dwpf":
        header, rows = _table_dwpf(min(args.size, 4), args.seed)
    elif args.kind == "scalar":
        header, rows = _table_scalar(min(args.size, 3), min(args.size, 3) + 2,
                                     args.seed)
    else:
        print(f"unknown table kind {args.kind!r}", file=sys.stderr)
        return 2
    print(header)
    if rows:
        cols = list(rows[0])
        widths = {c: max(len(c), max(len(str(r[c])) for r in rows)) for c in cols}
        print("  ".join(c.ljust(widths[c]) for c in cols))
        for r in rows:
            print("  ".join(str(r[c]).ljust(widths[c]) for c in cols))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"table": args.kind, "rows": rows}, fh, indent=2,
                      sort_keys=True)
            fh.write("\n")
    return 0 if all(r.get("agree", True) for r in rows) else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ferrofock",
        description="verification suites for free-fermion structures in "
                    "integrable models")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")

    ps = sub.add_parser("suite", help="run a named verification suite")
    ps.add_argument("name", choices=SUITE_NAMES)
    ps.add_argument("--seed", type=int, default=_default_seed())
    ps.add_argument("--tol", type=float, default=1e-9)
    ps.add_argument("--max-size", type=int, default=4, dest="max_size")
    ps.add_argument("--json", type=str, default=None)
    ps.add_argument("--quiet", action="store_true")
    ps.set_defaults(func=cmd_suite)

    ptab = sub.add_parser("table", help="emit an enumeration-vs-closed-form table")
    ptab.add_argument("kind", choices=("macmahon", "vuletic", "strict",
                                       "dwpf", "scalar"))
    ptab.add_argument("--size", type=int, default=8,
                      help="series degree or lattice size")
    ptab.add_argument("--t", type=str, default=None,
                      help="numeric t for the vuletic table (default symbolic)")
    ptab.add_argument("--seed", type=int, default=_default_seed())
    ptab.add_argument("--json", type=str, default=None)
    ptab.set_defaults(func=cmd_table)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
