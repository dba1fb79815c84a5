"""Command-line interface.

Subcommands
-----------
count      exact integer tables (excursions, subset counts, bridges, blocks)
xi         single modular subset count
lambda     von Sterneck multiset count (--k/--modulus/--residue) or the
           renewal-mass enclosure (--terms/--digits)
table      exact rational tables: pn | meander | levy
bijection  marked excursions and their residue subsets; --demo prints the
           worked n=2 table
simulate   Monte Carlo estimators: persistence | bridge | atau
verify     one-shot invariant suite (exit 1 on any failure)
report     CSV tables plus PNG figures under --out-dir

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 resource guard tripped.  CSV headers and JSON schema tags are versioned;
``--format json`` output round-trips through ``json.loads``.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from mpmath import mp

from . import asymptotics, bijection, excursion_counts, montecarlo, sterneck, verify
from .errors import ResourceGuardError

DEFAULTS = {
    "max_n": 20,
    "trials": 100_000,
    "terms": 10_000,
    "digits": 50,
    "horizon": 10_000,
    "seed_env": "SINAI_SEED",
}

SCHEMA_PREFIX = "sinai"
SCHEMA_VERSION = "v1"


class UsageError(ValueError):
    """Invalid argument combination detected after parsing."""


def _schema(kind: str) -> str:
    return f"{SCHEMA_PREFIX}.{kind}.{SCHEMA_VERSION}"


def _emit(args, header: list[str], rows: list[list], kind: str,
          json_keyed_by_n: bool = False) -> None:
    out = sys.stdout if args.output is None else open(args.output, "w")
    try:
        if args.format == "csv":
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
        elif json_keyed_by_n:
            payload = {
                "schema": _schema(kind),
                "values": {str(row[0]): row[1] for row in rows},
            }
            json.dump(payload, out, indent=2)
            out.write("\n")
        else:
            payload = {
                "schema": _schema(kind),
                "rows": [dict(zip(header, row)) for row in rows],
            }
            json.dump(payload, out, indent=2)
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _resolve_seed(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get(DEFAULTS["seed_env"])
    return int(env) if env else 0


# ---------------------------------------------------------------------------
# handlers


def _cmd_count(args) -> int:
    target = args.target
    n = args.max_n
    if args.route is not None and target != "phi":
        raise UsageError("--route applies to 'count phi' only")
    if target == "phi":
        route = args.route or "recurrence"
        if route == "brute":
            values = [excursion_counts.excursion_count_bruteforce(k) for k in range(n + 1)]
        elif route == "dp":
            values = excursion_counts.excursion_count_table_dp(n).values()
        else:
            values = excursion_counts.excursion_count_table_recurrence(n).values()
    elif target == "xi":
        values = excursion_counts.xi_table(n).values()
    elif target == "bridges":
        values = excursion_counts.zero_area_bridge_table(n).values()
    else:  # irreducible
        phi = excursion_counts.excursion_count_table_recurrence(n)
        values = excursion_counts.irreducible_table(phi).values()
    _emit(args, ["n", "value"], [[k, v] for k, v in enumerate(values)],
          f"count.{target}", json_keyed_by_n=True)
    return 0


def _cmd_xi(args) -> int:
    print(sterneck.residue_subset_count(args.n))
    return 0


def _cmd_lambda(args) -> int:
    count_flags = args.k is not None or args.modulus is not None or args.residue is not None
    series_flags = args.terms is not None or args.digits is not None
    if count_flags and series_flags:
        raise UsageError("choose either --k/--modulus/--residue or --terms/--digits")
    if count_flags:
        if args.k is None or args.modulus is None:
            raise UsageError("multiset counting needs --k and --modulus")
        if args.residue is not None:
            print(sterneck.multiset_count_mod(args.k, args.modulus, args.residue))
        else:
            for s in range(args.modulus):
                print(sterneck.multiset_count_mod(args.k, args.modulus, s))
        return 0
    terms = args.terms if args.terms is not None else DEFAULTS["terms"]
    digits = args.digits if args.digits is not None else DEFAULTS["digits"]
    enc = asymptotics.lambda_enclosure(terms=terms, digits=digits)
    mp.dps = digits
    rows = [[mp.nstr(enc.lower, digits), mp.nstr(enc.upper, digits),
             float(enc.width), terms, digits, "tail bound heuristic (calibrated k^-5/2 majorant)"]]
    _emit(args, ["lower", "upper", "width", "terms", "digits", "note"], rows, "lambda")
    return 0


def _cmd_table(args) -> int:
    n = args.max_n
    if args.which == "pn":
        rows = asymptotics.exact_excursion_probability_table(n)
        data = [[r.n, f"{r.probability.numerator}/{r.probability.denominator}",
                 float(r.probability), r.scaled, r.ratio_to_limit] for r in rows]
        _emit(args, ["n", "p", "p_decimal", "sqrt_n_p", "ratio_to_limit"], data, "table.pn")
    elif args.which == "meander":
        rows = asymptotics.exact_meander_probability_table(n)
        data = [[r.n, f"{r.probability.numerator}/{r.probability.denominator}",
                 float(r.probability), r.scaled, r.ratio_to_limit] for r in rows]
        _emit(args, ["n", "p", "p_decimal", "n14_p", "ratio_to_limit"], data, "table.meander")
    else:  # levy
        report = asymptotics.levy_checks(n)
        data = [[r.n, f"{r.nu.numerator}/{r.nu.denominator}", r.scaled, r.ratio,
                 r.conv_ratio] for r in report.rows]
        _emit(args, ["n", "nu", "n32_xi", "nu_ratio", "conv_ratio"], data, "table.levy")
    return 0


def _cmd_bijection(args) -> int:
    n = 2 if args.demo else args.n
    if n is None:
        raise UsageError("bijection needs --n (or --demo)")
    rows = []
    for m in bijection.iter_marked_excursions(n):
        t = bijection.upsilon(m)
        rows.append([
            m.excursion.to_string(),
            m.j,
            ",".join(str(v) for v in t.subset),
        ])
    _emit(args, ["excursion", "j", "subset"], rows, "bijection")
    return 0


def _cmd_simulate(args) -> int:
    seed = _resolve_seed(args.seed)
    trials = args.trials
    threads = args.threads
    if args.which == "persistence":
        if args.n is None:
            raise UsageError("simulate persistence needs --n")
        est = montecarlo.estimate_sinai_persistence(args.n, trials, seed, threads)
    elif args.which == "bridge":
        if args.n is None:
            raise UsageError("simulate bridge needs --n")
        est = montecarlo.estimate_bridge_persistence(args.n, trials, seed, threads)
    else:  # atau
        est = montecarlo.estimate_atau_zero(trials, args.horizon, seed, threads)
    rows = [[est.value, est.stderr, est.trials, est.censored, est.seed]]
    _emit(args, ["value", "stderr", "trials", "censored", "seed"], rows, f"simulate.{args.which}")
    return 0


def _cmd_verify(args) -> int:
    results = verify.run_all()
    worst = 0
    for r in results:
        status = "pass" if r.ok else "FAIL"
        print(f"{r.name:32s} {status}  {r.detail}")
        if not r.ok:
            worst = 1
    print("all checks passed" if worst == 0 else "verification FAILED")
    return worst


def _cmd_report(args) -> int:
    from . import report

    created = report.generate_report(args.out_dir, max_n=args.max_n,
                                     terms=args.terms, digits=args.digits)
    for path in created:
        print(path)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sinai",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "defaults: --max-n %(max_n)d, --trials %(trials)d, --terms %(terms)d, "
            "--digits %(digits)d, --horizon %(horizon)d; --seed falls back to "
            "$%(seed_env)s, then 0" % DEFAULTS
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    p = sub.add_parser("count", help="exact integer tables")
    p.add_argument("target", choices=("phi", "xi", "bridges", "irreducible"))
    p.add_argument("--max-n", type=int, default=DEFAULTS["max_n"])
    p.add_argument("--route", choices=("brute", "dp", "recurrence"), default=None)
    add_io(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("xi", help="one modular subset count")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_xi)

    p = sub.add_parser("lambda", help="multiset count or renewal-mass enclosure")
    p.add_argument("--k", type=int, default=None, help="multiset size")
    p.add_argument("--modulus", type=int, default=None)
    p.add_argument("--residue", type=int, default=None)
    p.add_argument("--terms", type=int, default=None, help="series terms for the enclosure")
    p.add_argument("--digits", type=int, default=None, help="working precision in digits")
    add_io(p)
    p.set_defaults(func=_cmd_lambda)

    p = sub.add_parser("table", help="exact rational tables")
    p.add_argument("which", choices=("pn", "meander", "levy"))
    p.add_argument("--max-n", type=int, default=DEFAULTS["max_n"])
    add_io(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("bijection", help="marked excursions and their subsets")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--demo", action="store_true", help="print the worked n=2 table")
    add_io(p)
    p.set_defaults(func=_cmd_bijection)

    p = sub.add_parser("simulate", help="Monte Carlo estimators")
    p.add_argument("which", choices=("persistence", "bridge", "atau"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--trials", type=int, default=DEFAULTS["trials"])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--horizon", type=int, default=DEFAULTS["horizon"])
    p.add_argument("--threads", type=int, default=1)
    add_io(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("report", help="write CSV tables and PNG figures")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--max-n", type=int, default=40)
    p.add_argument("--terms", type=int, default=2000)
    p.add_argument("--digits", type=int, default=DEFAULTS["digits"])
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
