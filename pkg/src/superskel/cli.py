"""Command-line interface.

Subcommands: eval, compose, diff, check, glue, selftest.  Exit codes: 0 on
success, 1 when a check fails or two computation routes disagree, 2 on usage
or parse errors.  All numeric output is exact.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import parsing, selftest
from .atlas import ManifoldPoint, check_cocycle, transport
from .calculus import (bgn_quotient, check_def43, check_lambda_linearity, check_taylor,
                       derivative)
from .continuation import check_naturality, eval_subst, eval_taylor
from .errors import ParseError, SuperskelError
from .morphisms import compose_formula, compose_subst

CHECK_KINDS = ("naturality", "bgn", "linearity", "def43", "taylor")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")


def _load_skeleton(path: str):
    return parsing.parse_skeleton_file(_read(path))


def _cmd_eval(args) -> int:
    skeleton = _load_skeleton(args.skeleton)
    point = parsing.parse_point_file(_read(args.point), skeleton.source_space)
    route = eval_taylor if args.route == "taylor" else eval_subst
    result = route(skeleton, point)
    if args.route == "both":
        other = eval_taylor(skeleton, point)
        if other != result:
            print("DIVERGENCE: substitution and taylor routes disagree", file=sys.stderr)
            return 1
    sys.stdout.write(parsing.format_point(result))
    return 0


def _cmd_compose(args) -> int:
    outer = _load_skeleton(args.outer)
    inner = _load_skeleton(args.inner)
    if args.method in ("subst", "both"):
        by_subst = compose_subst(outer, inner)
    if args.method in ("formula", "both"):
        by_formula = compose_formula(outer, inner)
    if args.method == "both":
        if not all(a == b for a, b in zip(by_subst.components, by_formula.components)):
            print("DIVERGENCE: composition routes disagree", file=sys.stderr)
            return 1
        result = by_subst
    else:
        result = by_subst if args.method == "subst" else by_formula
    sys.stdout.write(parsing.format_skeleton(result))
    return 0


def _cmd_diff(args) -> int:
    skeleton = _load_skeleton(args.skeleton)
    if args.order < 1:
        print("error: --order must be at least 1", file=sys.stderr)
        return 2
    data = derivative(skeleton, args.order)
    from itertools import product as iproduct

    print(f"# derivative order {args.order} of {args.skeleton}")
    p = skeleton.target_space.even_dim
    for dirs in iproduct(data.directions, repeat=args.order):
        comps = data.components(dirs)
        if all(c.is_zero() for c in comps):
            continue
        dir_text = " ".join(f"{kind}{index}" for kind, index in dirs)
        for ci, comp in enumerate(comps):
            if comp.is_zero():
                continue
            name = f"y{ci + 1}" if ci < p else f"h{ci - p + 1}"
            print(f"d({dir_text}) {name} = {comp.format()}")
    return 0


def _cmd_check(args) -> int:
    skeleton = _load_skeleton(args.skeleton)
    rng = random.Random(args.seed)
    rank = args.rank
    if args.kind == "naturality":
        report = check_naturality(skeleton, rank, rng=rng, sample_count=args.samples)
    elif args.kind == "linearity":
        report = check_lambda_linearity(skeleton, rank, rng=rng, sample_count=args.samples)
    elif args.kind == "def43":
        report = check_def43(skeleton, rank, rng, cases=args.samples)
    elif args.kind == "taylor":
        report = check_taylor(skeleton, rank, rng, cases=args.samples)
    else:  # bgn
        from .report import CheckReport

        report = CheckReport("difference quotient")
        quotient = bgn_quotient(skeleton)
        report.add("f(x+tv) - f(x) = t * quotient symbolically", quotient.identity_holds())
        from . import randgen
        from .errors import DomainError

        for case in range(args.samples):
            x = randgen.random_point(rng, quotient.extended_space, rank,
                                     quotient.extended_domain)
            try:
                lhs = eval_subst(quotient.shifted, x, check_domain=False)
                rhs = eval_subst(quotient.unshifted, x, check_domain=False)
                qv = eval_subst(quotient.quotient, x, check_domain=False)
            except DomainError:
                report.add_skip(f"sampled identity {case}", "denominator hit at sample")
                continue
            t_val = x.even_values[2 * skeleton.source_space.even_dim]
            ok = all(a - b == t_val * q for a, b, q in
                     zip(lhs.entries(), rhs.entries(), qv.entries()))
            report.add(f"sampled identity {case}", ok)
    print(report.summary(verbose=args.verbose))
    return 0 if report.ok else 1


def _cmd_glue(args) -> int:
    data = parsing.parse_manifold_file(_read(args.manifold))
    rng = random.Random(args.seed)
    if args.glue_command == "check":
        report = check_cocycle(data, rng, samples=args.samples)
        print(report.summary(verbose=args.verbose))
        return 0 if report.ok else 1
    # transport
    space = data.charts[args.from_chart][0] if args.from_chart in data.charts else None
    if space is None:
        print(f"error: unknown chart {args.from_chart!r}", file=sys.stderr)
        return 2
    point = parsing.parse_point_file(_read(args.point), space)
    moved = transport(data, ManifoldPoint(args.from_chart, point), args.to_chart)
    sys.stdout.write(parsing.format_point(moved.point))
    return 0


def _cmd_selftest(args) -> int:
    names = set(args.suite) if args.suite else None
    unknown = (names or set()) - set(selftest.ALL_SUITES)
    if unknown:
        print(f"error: unknown suite(s) {sorted(unknown)}; "
              f"available: {sorted(selftest.ALL_SUITES)}", file=sys.stderr)
        return 2
    all_ok = True
    for report in selftest.run_suites(names, seed=args.seed):
        print(report.summary(verbose=args.verbose))
        all_ok = all_ok and report.ok
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superskel",
        description="Exact symbolic calculus for superdomain morphisms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a skeleton at a point")
    p_eval.add_argument("skeleton")
    p_eval.add_argument("point")
    p_eval.add_argument("--route", choices=("subst", "taylor", "both"), default="subst")
    p_eval.set_defaults(func=_cmd_eval)

    p_compose = sub.add_parser("compose", help="compose two skeletons (outer inner)")
    p_compose.add_argument("outer")
    p_compose.add_argument("inner")
    p_compose.add_argument("--method", choices=("subst", "formula", "both"),
                           default="subst")
    p_compose.set_defaults(func=_cmd_compose)

    p_diff = sub.add_parser("diff", help="print symbolic derivative data")
    p_diff.add_argument("skeleton")
    p_diff.add_argument("--order", type=int, default=1)
    p_diff.set_defaults(func=_cmd_diff)

    p_check = sub.add_parser("check", help="run a verification battery on a skeleton")
    p_check.add_argument("kind", choices=CHECK_KINDS)
    p_check.add_argument("skeleton")
    p_check.add_argument("--rank", type=int, default=4)
    p_check.add_argument("--samples", type=int, default=5)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--verbose", action="store_true")
    p_check.set_defaults(func=_cmd_check)

    p_glue = sub.add_parser("glue", help="atlas operations")
    glue_sub = p_glue.add_subparsers(dest="glue_command", required=True)
    g_check = glue_sub.add_parser("check", help="verify the cocycle conditions")
    g_check.add_argument("manifold")
    g_check.add_argument("--samples", type=int, default=25)
    g_check.add_argument("--seed", type=int, default=0)
    g_check.add_argument("--verbose", action="store_true")
    g_check.set_defaults(func=_cmd_glue)
    g_move = glue_sub.add_parser("transport", help="carry a point between charts")
    g_move.add_argument("manifold")
    g_move.add_argument("from_chart")
    g_move.add_argument("point")
    g_move.add_argument("to_chart")
    g_move.set_defaults(func=_cmd_glue, seed=0)

    p_self = sub.add_parser("selftest", help="run the property suites")
    p_self.add_argument("--suite", action="append",
                        help="restrict to named suites (repeatable)")
    p_self.add_argument("--seed", type=int, default=None)
    p_self.add_argument("--verbose", action="store_true")
    p_self.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SuperskelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
