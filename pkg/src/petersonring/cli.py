"""Command line interface.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .exact import format_rational
from .groebner import IdealBasis, buchberger
from .hilbert import expected_peterson_series, series_of_quotient
from .peterson import build_presentation, enumerate_fixed_points, equivariant_variables, restrict_class
from .poly import MonomialOrder, PolynomialParseError, VariableSet, parse_polynomial
from .regseq import DEFAULT_BRANCH_CAP, QuadraticSystem, SoundnessError, cross_check, cross_check_peterson
from .verify import SCHEMA, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _n_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError(f"n must be at least 2, got {n}")
    return n


def _even_arg(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if d < 0 or d % 2:
        raise argparse.ArgumentTypeError(f"degree bound must be a non-negative even integer, got {d}")
    return d


def _positive_arg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--threads", type=_positive_arg, default=os.cpu_count() or 1,
                        help="worker threads (default: all cores); results do not depend on it")

    parser = argparse.ArgumentParser(
        prog="petersonring",
        description="Exact checks of the presentation of equivariant cohomology of Peterson varieties.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run every check for one n")
    p.add_argument("--n", type=_n_arg, required=True)
    p.add_argument("--degree-bound", type=_even_arg, default=None, help="default 4n")
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    p.add_argument("--branch-cap", type=_positive_arg, default=DEFAULT_BRANCH_CAP)

    p = sub.add_parser("fixed-points", parents=[common], help="list the circle-fixed points")
    p.add_argument("--n", type=_n_arg, required=True)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert series of a presentation")
    p.add_argument("--n", type=_n_arg, required=True)
    variant = p.add_mutually_exclusive_group()
    variant.add_argument("--equivariant", dest="variant", action="store_const", const="equivariant")
    variant.add_argument("--ordinary", dest="variant", action="store_const", const="ordinary")
    p.set_defaults(variant="equivariant")
    p.add_argument("--degree-bound", type=_even_arg, default=None, help="default 4n")
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")

    p = sub.add_parser("restrict", parents=[common], help="restrict a class to the fixed points")
    p.add_argument("--n", type=_n_arg, required=True)
    p.add_argument("--class", dest="expr", required=True, help='e.g. "xi_1*(xi_1 - 1/2*xi_2 - t)"')

    p = sub.add_parser("regseq", parents=[common], help="decide whether a quadratic system has only the zero solution")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--system", type=Path, help='JSON file {"q": 4, "a": [...], "b": [...]}')
    src.add_argument("--n", type=_n_arg, help="use the Peterson system for this n")
    p.add_argument("--branch-cap", type=_positive_arg, default=DEFAULT_BRANCH_CAP)
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")

    p = sub.add_parser("groebner", parents=[common], help="reduced Gröbner basis of an ideal")
    p.add_argument("--ideal", type=Path, required=True,
                   help='JSON file {"variables": ["x", ...], "generators": ["x - y", ...]}')
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_verify(args) -> int:
    report = run_verify(args.n, args.degree_bound, args.order, args.branch_cap, args.threads)
    _emit(args, report.to_json(), report.render_text())
    return report.exit_code


def cmd_fixed_points(args) -> int:
    fps = enumerate_fixed_points(args.n)
    payload = {"schema": SCHEMA, "n": args.n, "points": [p.to_json() for p in fps]}
    text = "\n".join(f"J = {list(p.subset)!s:<16} w = {p.label}" for p in fps)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    n = args.n
    D = 4 * n if args.degree_bound is None else args.degree_bound
    ring = build_presentation(n, args.variant, args.order)
    computed = series_of_quotient(ring.groebner(), D)
    expected = expected_peterson_series(n, args.variant, D)
    match = computed.coefficients == expected.coefficients
    payload = {
        "schema": SCHEMA,
        "n": n,
        "variant": args.variant,
        "series": computed.to_json(),
        "expected": expected.to_json(),
        "match": match,
    }
    text = (
        f"{args.variant} series, n = {n}, degrees <= {D}\n"
        f"  computed: {list(computed.coefficients)}\n"
        f"  expected: {list(expected.coefficients)}  = {expected.closed_form}\n"
        f"  {'match' if match else 'MISMATCH'}"
    )
    _emit(args, payload, text)
    return EXIT_OK if match else EXIT_FAIL


def cmd_restrict(args) -> int:
    vs = equivariant_variables(args.n)
    p = parse_polynomial(args.expr, vs)
    vec = restrict_class(p, enumerate_fixed_points(args.n))
    payload = {"schema": SCHEMA, "n": args.n, "class": str(p), "values": vec.to_json()}
    text = "\n".join(f"{pt.label:>10} -> {v}" for pt, v in zip(vec.points, vec.values))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_regseq(args) -> int:
    if args.system is not None:
        try:
            system = QuadraticSystem.load(args.system)
        except (OSError, ValueError, TypeError) as exc:
            raise UsageError(f"cannot load system from {args.system}: {exc}") from exc
        report = cross_check(system, args.branch_cap, args.threads, args.order)
        source = system.to_json()
    else:
        report = cross_check_peterson(args.n, args.branch_cap, args.threads, args.order)
        source = {"peterson_n": args.n}
    payload = {"schema": SCHEMA, "system": source, **report.to_json()}
    lines = [f"q = {report.q}" + (" (trivial one-variable case, z^2 = 0)" if report.trivial else "")]
    crit = report.criterion
    lines.append(f"  continued-fraction criterion: {'holds' if crit.holds else f'fails at {crit.failing_pair}'}")
    if report.branch is not None:
        b = report.branch
        lines.append(f"  branches: {b.branches}, only origin: {b.only_origin}")
        if b.witness is not None:
            lines.append(f"  witness kernel (branch {b.witness_branch}): "
                         + "; ".join("(" + ", ".join(format_rational(x) for x in v) + ")" for v in b.witness))
    lines.append(f"  Gröbner dimension zero: {report.dimension_zero}")
    lines.append(f"only origin: {report.only_origin}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.only_origin else EXIT_FAIL


def cmd_groebner(args) -> int:
    try:
        data = json.loads(args.ideal.read_text(encoding="utf-8"))
        names = data["variables"]
        gens = data["generators"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot load ideal from {args.ideal}: {exc}") from exc
    vs = VariableSet(tuple(names))
    order = MonomialOrder.of(args.order, vs)
    polys = []
    for i, text in enumerate(gens):
        try:
            polys.append(parse_polynomial(text, vs))
        except PolynomialParseError as exc:
            raise UsageError(f"generator {i}: {exc}") from exc
    polys = [p for p in polys if p]
    if not polys:
        basis = []
    else:
        try:
            ideal = IdealBasis(tuple(polys), order)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        basis = [g.to_string(order) for g in buchberger(ideal).elements]
    payload = {"schema": SCHEMA, "variables": list(vs.names), "order": args.order, "basis": basis}
    _emit(args, payload, "\n".join(basis) if basis else "(zero ideal)")
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "fixed-points": cmd_fixed_points,
    "hilbert": cmd_hilbert,
    "restrict": cmd_restrict,
    "regseq": cmd_regseq,
    "groebner": cmd_groebner,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, PolynomialParseError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SoundnessError as exc:
        print(f"{parser.prog} {args.command}: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
