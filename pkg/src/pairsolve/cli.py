"""Command-line entry point: ``pairsolve {check,solve,coaxial,badsurface}``.

Exit codes: 0 success, 1 genericity conditions fail, 2 usage, parse or
degeneracy errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import coaxial as cx
from .configfile import read_config
from .errors import ConditionsNotMetError, PairSolveError
from .genericity import ANCHOR_LABELS, QUADRUPLES, check_conditions
from .identifiability import BadAnchorProbe, format_cloud, sample_bad_surface
from .ratpoly import format_poly, real_roots, squarefree_decomposition
from .solver import SolveOptions, fmt, solve, solve_extended

EXIT_OK = 0
EXIT_CONDITIONS = 1
EXIT_ERROR = 2


def _quad(q) -> str:
    return "".join(q)


def cmd_check(args) -> int:
    cfg = read_config(args.config).config
    report = check_conditions(cfg)
    out = sys.stdout
    out.write("# Delta (coplanarity determinant)\n")
    for q in QUADRUPLES:
        out.write(f"Delta {_quad(q)}\t{fmt(report.delta_values[q])}\n")
    out.write("# k values\n")
    for label in ANCHOR_LABELS:
        out.write(f"k {label}\t{fmt(report.k_values[label])}\n")
    out.write("# Omega (four-sphere concurrency)\n")
    for q in QUADRUPLES:
        out.write(f"Omega {_quad(q)}\t{fmt(report.omega_values[q])}\n")
    for tag, ok, failing in (
        ("(i)", report.condition_i, report.failing_quadruples_i),
        ("(ii)", report.condition_ii, report.failing_quadruples_ii),
    ):
        detail = "" if ok else "\t" + " ".join(_quad(q) for q in failing)
        out.write(f"condition {tag}: {'PASS' if ok else 'FAIL'}{detail}\n")
    return EXIT_OK if report.passed else EXIT_CONDITIONS


def _options(args) -> SolveOptions:
    return SolveOptions(
        starts=args.starts,
        seed=args.seed,
        accept_tol=args.tol,
        max_iter=args.max_iter,
        box_radius=args.box_radius,
        force=args.force,
    )


def cmd_solve(args) -> int:
    cfg = read_config(args.config).config
    if args.extended and cfg.g is None:
        print("error: --extended needs a G line in the configuration", file=sys.stderr)
        return EXIT_ERROR
    run = solve_extended if args.extended else solve
    if not args.extended:
        cfg = cfg.with_g(None)
    report = run(cfg, _options(args))
    sys.stdout.write(report.to_tsv())
    return EXIT_OK


def _digits(precision: Fraction) -> int:
    return max(1, math.ceil(-math.log10(float(precision))))


def cmd_coaxial(args) -> int:
    cc = cx.CoaxialConfig(args.r1, args.r2, args.a3, args.d3, args.u, args.v)
    precision = cx.to_rational(args.precision)
    if precision <= 0:
        raise PairSolveError("--precision must be positive")
    out = sys.stdout
    out.write(f"kappa1 = {cc.kappa1}\n")
    out.write(f"kappa2 = {cc.kappa2}\n")
    _, d = cx.rational_u_of_v(cc)
    if d.is_zero():
        out.write("w undefined: a3 == d3, U is not a rational function of V\n")
    else:
        w = cx.w_polynomial(cc)
        out.write(f"w (ascending, degree {w.degree}): {format_poly(w)}\n")
        out.write(f"w primitive: {format_poly(w.primitive())}\n")
        out.write(f"V^8 coefficient (closed form): {cx.v8_coefficient(cc)}\n")
        out.write("square-free factors:\n")
        for factor, mult in squarefree_decomposition(w):
            out.write(f"  ^{mult}: {format_poly(factor.primitive())}\n")
        digits = _digits(precision)
        out.write(f"real roots of w (precision {args.precision}):\n")
        for root in real_roots(w, precision):
            mid = (root.lo + root.hi) / 2
            out.write(f"  {float(mid):.{digits}f}\tmultiplicity {root.multiplicity}\t[{root.lo}, {root.hi}]\n")
    out.write("axis solutions (U V residual trivial):\n")
    for pair in cx.enumerate_axis_solutions(cc):
        out.write(f"  {fmt(pair.x.z)}\t{fmt(pair.y.z)}\t{fmt(pair.residual_norm)}\t{int(pair.is_trivial)}\n")
    return EXIT_OK


def cmd_badsurface(args) -> int:
    cfg = read_config(args.config).config.with_g(None)
    report = solve(cfg, _options(args))
    probe = BadAnchorProbe.from_report(cfg, report)
    out = sys.stdout
    if not probe.extras:
        out.write("# no non-trivial solutions found\n")
        return EXIT_OK
    for e in probe.extras:
        out.write("# extra " + " ".join(fmt(v) for v in (*e.x, *e.y)) + "\n")
    out.write(format_cloud(sample_bad_surface(probe, cfg, args.box, args.grid)))
    return EXIT_OK


def _add_solve_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", required=True, help="configuration file")
    p.add_argument("--starts", type=int, default=SolveOptions.starts, help="random starts")
    p.add_argument("--seed", type=int, default=SolveOptions.seed)
    p.add_argument("--tol", type=float, default=SolveOptions.accept_tol, help="acceptance residual")
    p.add_argument("--max-iter", type=int, default=SolveOptions.max_iter)
    p.add_argument("--box-radius", type=float, default=None, help="half-width of the start box")
    p.add_argument("--force", action="store_true", help="solve even if the conditions fail")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pairsolve", description="Solve and probe pair-from-distance systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate the two genericity conditions")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="multistart solve, TSV on stdout")
    _add_solve_flags(p)
    p.add_argument("--extended", action="store_true", help="include the seventh anchor G")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("coaxial", help="exact reduction for two coaxial circles")
    for name in ("r1", "r2", "a3", "d3", "u", "v"):
        p.add_argument(f"--{name}", required=True, type=str)
    p.add_argument("--precision", default="1e-10", type=str)
    p.set_defaults(func=cmd_coaxial)

    p = sub.add_parser("badsurface", help="sample anchors that fail to separate the extras")
    _add_solve_flags(p)
    p.add_argument("--box", nargs=6, type=float, required=True, metavar=("X0", "X1", "Y0", "Y1", "Z0", "Z1"))
    p.add_argument("--grid", type=int, default=21)
    p.set_defaults(func=cmd_badsurface)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConditionsNotMetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONDITIONS
    except (PairSolveError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
