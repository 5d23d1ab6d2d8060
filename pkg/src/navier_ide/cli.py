"""Command-line front end.

Subcommands: ``solve``, ``study``, ``certify``, ``list-examples``.
Exit codes: 0 success, 2 bad arguments, 3 no convergence, 4 parse or
evaluation error, 5 contraction condition not met (``certify``).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from navier_ide.certificate import (
    ContractionInputs,
    contraction_check,
    lipschitz_estimate,
    positivity_check,
    sup_f_check,
)
from navier_ide.expr import EvaluationError, ExprSyntaxError
from navier_ide.kernels import kernel_bound_m2
from navier_ide.plot import emit_svg
from navier_ide.problem import EXAMPLES, from_expressions, get_example
from navier_ide.quadrature import GridSpec
from navier_ide.solver import ExactError, NonConvergenceError, Successive, solve
from navier_ide.study import StudyError, convergence_table, format_table, observed_order, write_csv

EXIT_ARGS = 2
EXIT_NONCONVERGENCE = 3
EXIT_EVALUATION = 4
EXIT_NOT_CONTRACTIVE = 5


class UsageError(Exception):
    pass


def fmt(value):
    return "n/a" if value is None else f"{value:.4e}"


def _add_problem_args(p):
    g = p.add_argument_group("problem")
    g.add_argument("--example", metavar="NAME", help=f"built-in problem ({', '.join(EXAMPLES)})")
    g.add_argument("--f", dest="f_text", metavar="EXPR", help="right-hand side f(x, u, v, z)")
    g.add_argument("--kernel", dest="k_text", metavar="EXPR", help="kernel k(x, t)")
    g.add_argument("--exact", dest="exact_text", metavar="EXPR", help="exact solution u(x), optional")


def _add_iteration_args(p):
    p.add_argument("--criterion", choices=("successive", "exact"), default="successive")
    p.add_argument("--eps", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--out", metavar="PATH", help="write CSV results here")
    p.add_argument("--json", action="store_true", help="print a JSON summary instead of text")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="navier-ide",
        description="Fixed-point solver for u'''' = f(x, u, u', int k(x,t) u(t) dt) with Navier conditions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one problem on one grid")
    _add_problem_args(p)
    p.add_argument("--n", type=int, default=100, help="number of subintervals N (h = 1/N)")
    _add_iteration_args(p)
    p.add_argument("--plot", metavar="PATH", help="write an SVG plot of u")

    p = sub.add_parser("study", help="grid-refinement convergence table")
    _add_problem_args(p)
    p.add_argument("--grids", required=True, help="comma-separated grid sizes, e.g. 50,100,200")
    p.add_argument("--workers", type=int, default=1)
    _add_iteration_args(p)

    p = sub.add_parser("certify", help="check the contraction hypotheses")
    _add_problem_args(p)
    p.add_argument("--M", dest="m", type=float, required=True)
    p.add_argument("--L0", dest="l0", type=float)
    p.add_argument("--L1", dest="l1", type=float)
    p.add_argument("--L2", dest="l2", type=float)
    p.add_argument("--M2", dest="m2", type=float, help="kernel bound; computed numerically if omitted")
    p.add_argument("--estimate", action="store_true", help="estimate missing Lipschitz constants by sampling")
    p.add_argument("--samples", type=int, default=100_000, help="random pairs for Lipschitz estimation")
    p.add_argument("--density", type=int, default=20, help="points per axis for sup/positivity sampling")
    p.add_argument("--json", action="store_true")

    sub.add_parser("list-examples", help="list built-in problems")
    return parser


def _problem(args):
    custom = any(v is not None for v in (args.f_text, args.k_text, args.exact_text))
    if args.example and custom:
        raise UsageError("give either --example or --f/--kernel, not both")
    if args.example:
        return get_example(args.example)
    if args.f_text is None or args.k_text is None:
        raise UsageError("a problem is required: --example NAME or --f EXPR --kernel EXPR")
    return from_expressions(args.f_text, args.k_text, args.exact_text)


def _rule(args, problem):
    if args.criterion == "exact":
        if not problem.has_exact:
            raise UsageError("--criterion exact needs an exact solution (--exact or an example that has one)")
        return ExactError(max_iter=args.max_iter)
    return Successive(eps=args.eps, max_iter=args.max_iter)


def solve_summary(problem, sol):
    return {
        "problem": problem.name,
        "n": sol.grid.n,
        "iterations": sol.iterations,
        "residual": sol.residual,
        "error_u": sol.error_u,
        "error_v": sol.error_v,
        "max_abs_u": float(np.max(np.abs(sol.u))),
        "max_abs_v": float(np.max(np.abs(sol.v))),
    }


def run_solve(args, out=None):
    out = out or sys.stdout
    problem = _problem(args)
    rule = _rule(args, problem)
    sol = solve(problem, GridSpec(args.n), rule)
    summary = solve_summary(problem, sol)
    if args.json:
        print(json.dumps(summary), file=out)
    else:
        print(f"problem     {problem.name}", file=out)
        print(f"N           {sol.grid.n}", file=out)
        print(f"iterations  {sol.iterations}", file=out)
        print(f"residual    {fmt(sol.residual)}", file=out)
        if sol.error_u is not None:
            print(f"error_u     {fmt(sol.error_u)}", file=out)
        if sol.error_v is not None:
            print(f"error_v     {fmt(sol.error_v)}", file=out)
        print(f"max|U|      {fmt(summary['max_abs_u'])}", file=out)
        print(f"max|V|      {fmt(summary['max_abs_v'])}", file=out)
    if args.out:
        sol.to_csv(args.out)
    if args.plot:
        emit_svg(sol, args.plot, title=f"{problem.name}, N = {sol.grid.n}")
    return 0


def _grids(text):
    try:
        ns = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"--grids must be comma-separated integers, got {text!r}") from None
    if not ns or any(n < 2 for n in ns):
        raise UsageError("--grids needs at least one grid size, each >= 2")
    return ns


def run_study(args, out=None):
    out = out or sys.stdout
    problem = _problem(args)
    rule = _rule(args, problem)
    rows = convergence_table(problem, _grids(args.grids), rule, workers=args.workers)
    if args.json:
        doc = {
            "problem": problem.name,
            "rows": [
                {"N": r.n, "h2": r.h2, "m": r.iterations, r.kind: r.error} for r in rows
            ],
            "order": observed_order(rows) if len(rows) > 1 else [],
        }
        print(json.dumps(doc), file=out)
    else:
        print(format_table(rows, with_order=len(rows) > 1), file=out)
    if args.out:
        write_csv(rows, args.out)
    return 0


def run_certify(args, out=None):
    out = out or sys.stdout
    problem = _problem(args)
    if args.m <= 0:
        raise UsageError("--M must be positive")
    given = (args.l0, args.l1, args.l2)
    if None in given and not args.estimate:
        raise UsageError("give --L0, --L1 and --L2, or --estimate")
    m2 = args.m2 if args.m2 is not None else kernel_bound_m2(problem.kernel, 1000)
    if None in given:
        est = lipschitz_estimate(problem, args.m, samples=args.samples, m2=m2)
        given = tuple(g if g is not None else e for g, e in zip(given, est))
    _, sup_ok = sup_f_check(problem, args.m, density=args.density, m2=m2)
    pos_ok = positivity_check(problem, args.m, density=args.density, m2=m2)
    cert = contraction_check(ContractionInputs(args.m, *given, m2), sup_ok=sup_ok, positivity_ok=pos_ok)
    if args.json:
        print(cert.to_json(), file=out)
    else:
        print(cert.render(), file=out)
    if not cert.contraction_ok:
        print(f"warning: q = {cert.q:.4e} >= 1, contraction not certified", file=sys.stderr)
        return EXIT_NOT_CONTRACTIVE
    return 0


def run_list(args, out=None):
    out = out or sys.stdout
    for name, factory in EXAMPLES.items():
        p = factory()
        tag = "exact solution known" if p.has_exact else "no exact solution"
        print(f"{name}: {p.description} ({tag})", file=out)
    return 0


COMMANDS = {"solve": run_solve, "study": run_study, "certify": run_certify, "list-examples": run_list}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (ExprSyntaxError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVALUATION
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except StudyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
