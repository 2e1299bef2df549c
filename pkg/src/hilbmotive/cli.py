"""Command-line entry point: ``hilbmotive <subcommand> ...``.

Every subcommand accepts ``--format {table,json,csv}``; the exit status is 0
only when every requested check passes.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import __version__
from .graded import SurfaceDescriptor
from .motive import NonCellularError, chow_dims_hilb, hilb_decomposition, hodge_hilb, poincare_hilb
from .partitions import ORDERS, enum_partitions, m_coeff, orbit_bijection_check, stratum_dims
from .projectors import (
    build_block_realization,
    fiber_action_check,
    support_ledger,
    verify_completeness,
    verify_projector_algebra,
)
from .report import FORMATS, Envelope, Table
from .series import compare_with_decomposition, goettsche_series, two_path_check
from .surfaces import BUILTINS, SurfaceFileError, load_surface, surface_to_dict

DEFAULT_CAP = 30
DEFAULT_VERIFY_CAP = 12


class UsageError(Exception):
    pass


def _check_n(n: int, cap: int, minimum: int = 1, what: str = "n") -> None:
    if n < minimum:
        raise UsageError(f"{what} must be >= {minimum}, got {n}")
    if n > cap:
        raise UsageError(f"{what} = {n} exceeds the cap {cap}; raise it with --cap if you mean it")


def _surface(args) -> SurfaceDescriptor:
    if args.surface is None:
        raise UsageError(f"--surface is required (a JSON file or one of {', '.join(BUILTINS)})")
    return load_surface(args.surface)


def _inputs(args, surface: Optional[SurfaceDescriptor] = None) -> dict:
    keys = {k: v for k, v in vars(args).items() if k not in ("func", "format", "parallel", "surface", "argv")}
    if surface is not None:
        keys["surface"] = surface_to_dict(surface)
    return keys


# --- subcommands -------------------------------------------------------------

def cmd_partitions(args) -> Envelope:
    _check_n(args.n, args.cap if args.cap is not None else DEFAULT_CAP)
    table = Table("partitions", ["parts", "length", "m", "sigma_order", "dim_sym_stratum", "dim_hilb_stratum"])
    for nu in enum_partitions(args.n, args.order):
        table.add(str(nu), nu.l, m_coeff(nu), nu.sigma_order(), *stratum_dims(nu))
    return Envelope(args.argv, _inputs(args), [table])


def cmd_decompose(args) -> Envelope:
    _check_n(args.n, args.cap if args.cap is not None else DEFAULT_CAP)
    table = Table("decomposition", ["nu", "factors", "twist", "shift"])
    for term in hilb_decomposition(args.n, args.order):
        table.add(str(term.nu), term.factor_label(), term.twist, term.shift)
    return Envelope(args.argv, _inputs(args), [table])


def _two_path_table(s: SurfaceDescriptor, order: int) -> tuple[Table, bool]:
    report = two_path_check(s, order)
    table = Table("two_path_check", ["n", "status", "poincare"])
    for row in report.rows:
        table.add(row["n"], row["equal"], row["poincare"])
    return table, report.passed


def cmd_poincare(args) -> Envelope:
    s = _surface(args)
    _check_n(args.n, args.cap if args.cap is not None else DEFAULT_CAP, minimum=0)
    poly = poincare_hilb(s, args.n, parallel=args.parallel)
    table = Table("poincare", ["degree", "betti"])
    for d, b in enumerate(poly.to_list()):
        table.add(d, b)
    tables, passed = [table], None
    if args.check:
        check, passed = _two_path_table(s, args.n)
        tables.append(check)
    return Envelope(args.argv, _inputs(args, s), tables, passed)


def cmd_hodge(args) -> Envelope:
    s = _surface(args)
    _check_n(args.n, args.cap if args.cap is not None else DEFAULT_CAP, minimum=0)
    if s.hodge is None:
        raise UsageError(f"surface {s.name!r} has no Hodge data")
    hodge = hodge_hilb(s, args.n, parallel=args.parallel)
    table = Table("hodge", ["p", "q", "h"])
    for (p, q), h in hodge.items():
        table.add(p, q, h)
    tables, passed = [table], None
    if args.check:
        collapse_ok = hodge.collapse() == poincare_hilb(s, args.n)
        check = Table("checks", ["check", "status"])
        check.add("collapse(p+q) == poincare", collapse_ok)
        tables.append(check)
        passed = collapse_ok
    return Envelope(args.argv, _inputs(args, s), tables, passed)


def cmd_chow(args) -> Envelope:
    s = _surface(args)
    _check_n(args.n, args.cap if args.cap is not None else DEFAULT_CAP, minimum=0)
    ranks = chow_dims_hilb(s, args.n, parallel=args.parallel)
    table = Table("chow", ["k", "rank"])
    for k, r in enumerate(ranks.to_list(2 * args.n + 1)):
        table.add(k, r)
    tables, passed = [table], None
    if args.check:
        check, passed = _two_path_table(s, args.n)
        tables.append(check)
    return Envelope(args.argv, _inputs(args, s), tables, passed)


def cmd_series(args) -> Envelope:
    s = _surface(args)
    _check_n(args.order, args.cap if args.cap is not None else DEFAULT_CAP, minimum=0, what="order")
    series = goettsche_series(s, args.order)
    table = Table("series", ["n", "coefficients", "t=1", "t=-1"])
    for n in range(args.order + 1):
        coeff = series[n]
        dense = [coeff.terms.get((d,), 0) for d in range(max((m[0] for m in coeff.terms), default=-1) + 1)]
        table.add(n, dense, coeff.substitute([1]), coeff.substitute([-1]))
    tables, passed = [table], None
    if args.verify:
        check = Table("verification", ["check", "n", "status"])
        report = two_path_check(s, args.order)
        for row in report.rows:
            check.add("two_path", row["n"], row["equal"])
        motivic_ok = True
        for n in range(args.order + 1):
            ok, _ = compare_with_decomposition(n)
            motivic_ok &= ok
            check.add("motivic_expansion", n, ok)
        tables.append(check)
        passed = report.passed and motivic_ok
    return Envelope(args.argv, _inputs(args, s), tables, passed)


def cmd_verify(args) -> Envelope:
    _check_n(args.n, args.cap if args.cap is not None else DEFAULT_VERIFY_CAP)
    s = load_surface(args.surface) if args.surface else None
    table = Table("verification", ["check", "scope", "status", "checked", "note"])
    passed = True

    def add(check: str, scope: str, ok: Optional[bool], checked: int, note: str = "") -> None:
        nonlocal passed
        if ok is False:
            passed = False
        status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
        table.add(check, scope, status, checked, note or "-")

    rep = verify_projector_algebra(args.n)
    add("projector_algebra", f"n={args.n}", rep.passed, rep.checked,
        f"{rep.details['pairs']} pairs" if rep.passed else str(rep.failures[0]))

    if s is not None:
        if not s.cellular:
            add("block_realization", s.name, None, 0, "surface is not cellular")
        else:
            r = build_block_realization(s, args.n)
            comp = verify_completeness(r, s)
            add("completeness", f"{s.name} dim={r.dim}", comp.passed, comp.checked,
                f"rank sum {comp.details['rank_sum']}" if comp.passed else str(comp.failures[0]))
            for nu in r.partitions:
                for mu in r.partitions:
                    if r.point_vector(mu) is None:
                        add("fiber_action", f"nu={nu} mu={mu}", None, 0, "no point class in A_0")
                        continue
                    fa = fiber_action_check(r, nu, mu)
                    add("fiber_action", f"nu={nu} mu={mu}", fa.passed, fa.checked, fa.details["case"])

    for mu in enum_partitions(args.n):
        ob = orbit_bijection_check(mu)
        add("orbit_bijection", f"mu={mu}", ob.passed, len(ob.witnesses),
            f"{ob.multipartition_orbits} orbits")

    ledger = support_ledger(args.n)
    add("support_ledger", f"n={args.n}", ledger.consistent and ledger.sign_feasible, ledger.unknowns,
        f"{ledger.rank} equations, {ledger.degrees_of_freedom} free")
    return Envelope(args.argv, _inputs(args, s), [table], passed)


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table")
    common.add_argument("--cap", type=int, default=None, help="refuse sizes above this (default 30; 12 for verify)")
    common.add_argument("--parallel", action="store_true", help="evaluate partition terms in worker processes")

    parser = argparse.ArgumentParser(prog="hilbmotive", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", parents=[common], help="list partitions of n with m_nu and strata dimensions")
    p.add_argument("n", type=int)
    p.add_argument("--order", choices=ORDERS, default="coarse_first")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("decompose", parents=[common], help="motivic decomposition of X^[n]")
    p.add_argument("n", type=int)
    p.add_argument("--order", choices=ORDERS, default="coarse_first")
    p.set_defaults(func=cmd_decompose)

    for name, func, helptext in (
        ("poincare", cmd_poincare, "Betti numbers of X^[n]"),
        ("hodge", cmd_hodge, "Hodge numbers of X^[n]"),
        ("chow", cmd_chow, "Chow ranks of X^[n] (cellular surfaces)"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("n", type=int)
        p.add_argument("--surface", help="surface JSON file or built-in name")
        p.add_argument("--check", action="store_true", help="cross-check against the product formula")
        p.set_defaults(func=func)

    p = sub.add_parser("series", parents=[common], help="expand the generating function in q")
    p.add_argument("--surface", help="surface JSON file or built-in name")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", parents=[common], help="run the projector and combinatorics checks")
    p.add_argument("n", type=int)
    p.add_argument("--surface", help="surface JSON file or built-in name (enables block realization)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = ["hilbmotive", *argv]
    fmt = args.format
    try:
        env = args.func(args)
    except (UsageError, SurfaceFileError, NonCellularError) as exc:
        print(f"hilbmotive: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(env.render(fmt))
    return 0 if env.passed in (None, True) else 1


if __name__ == "__main__":
    raise SystemExit(main())
