"""Command line driver.

Exit codes: 0 success, 1 a verification failed, 2 parse error (including
bad command line usage), 3 invalid problem data, 4 no generic point
configuration found, 5 I/O error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from math import factorial
from typing import Sequence

from .algebra import format_coefficient
from .count import GenericityExhausted, count_refined, invariance_suite
from .dr import f3u_series, fmp_series, igd_series, verify_moyal_claim
from .io import ParseError, count_report, format_count, load_problem, write_svgs
from .kontsevich import kontsevich
from .lattice import ProblemError, random_balanced, vec, vsum
from .moduli import audit_tree_decomposition, enumerate_types
from .multiplicity import Normalization, mu, theta_bs

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_GENERICITY = 4
EXIT_IO = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors share the parse exit code
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _problem(args):
    problem = load_problem(args.problem)
    degree, profile, config = problem.validated()
    seed = args.seed if getattr(args, "seed", None) is not None else (problem.seed if problem.seed is not None else 0)
    convention = getattr(args, "convention", None) or problem.convention or Normalization.DEFINITION.value
    truncation = getattr(args, "truncation", None)
    if truncation is None:
        truncation = problem.truncation
    return problem, degree, profile, config, seed, convention, truncation


def cmd_count(args) -> int:
    _, degree, profile, config, seed, convention, truncation = _problem(args)
    result = count_refined(
        degree, profile, points=config, seed=seed, convention=convention, labeled=args.labeled_ends, method=args.method
    )
    report = count_report(result, truncation)
    _emit(args, report, format_count(report))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    _, degree, profile, *_ = _problem(args)
    types = enumerate_types(degree, profile, labeled=args.labeled_ends)
    rows = [{"type": t.to_json(), "tree_decomposition": audit_tree_decomposition(t)} for t in types]
    text = [f"{len(types)} combinatorial types"]
    for i, row in enumerate(rows, 1):
        t = row["type"]
        text.append(
            f"  {i}: {len(t['markers'])} vertices, {len(t['edges'])} bounded edges, "
            f"tree decomposition {'ok' if row['tree_decomposition'] else 'fails'}"
        )
    _emit(args, {"count": len(types), "types": rows}, "\n".join(text))
    return EXIT_OK


def cmd_invariance(args) -> int:
    _, degree, profile, _, seed, convention, _ = _problem(args)
    seeds = range(seed, seed + args.seeds)
    report = invariance_suite(
        degree, profile, seeds, convention=convention, labeled=args.labeled_ends, workers=args.workers
    )
    polys = {str(s): p.to_text() for s, p in report.polynomials.items()}
    text = [f"seed {s}: {p}" for s, p in polys.items()]
    text.append("invariant" if report.passed else "NOT invariant")
    _emit(args, {"passed": report.passed, "polynomials": polys}, "\n".join(text))
    return EXIT_OK if report.passed else EXIT_FAILED


def _vectors(spec: str) -> list:
    try:
        return [vec(int(c) for c in part.split(",")) for part in spec.split(";") if part.strip()]
    except ValueError as exc:
        raise ParseError(f"cannot read vectors from {spec!r}; use 'x,y;x,y;...'") from exc


def _ints(spec: str) -> list[int]:
    try:
        return [int(c) for c in spec.split(",")]
    except ValueError as exc:
        raise ParseError(f"cannot read integers from {spec!r}") from exc


def cmd_vertex_series(args) -> int:
    order = args.truncation if args.truncation is not None else 12
    if args.kind == "igd":
        a, b = _ints(args.a or ""), _ints(args.b or "")
        if len(a) != len(b):
            raise ProblemError("series", "a and b need the same length")
        series = igd_series(a, b, order)
    else:
        vs = _vectors(args.vectors or "")
        balanced = bool(vs) and vsum(vs).is_zero()
        if args.kind == "f3u":
            if not (len(vs) == 2 or (len(vs) == 3 and balanced)):
                raise ProblemError("series", "f3u needs two vectors, or three balanced ones")
            series = f3u_series(vs[0], vs[1], order)
        else:
            if len(vs) < 3 or not balanced:
                raise ProblemError("series", "fmp needs at least three balanced vectors")
            series = fmp_series(vs, order)
    coeffs = [format_coefficient(c) for c in series.coefficients]
    text = " + ".join(f"({c}) u^{j}" for j, c in enumerate(coeffs) if c != "0") or "0"
    _emit(args, {"kind": args.kind, "truncation": order, "coefficients": coeffs}, f"{text} + O(u^{order + 1})")
    return EXIT_OK


def cmd_bs_identity(args) -> int:
    rng = random.Random(args.seed)
    failures = []
    checked = 0
    for n in range(args.min_n, args.max_n + 1):
        for _ in range(args.trials):
            vs = random_balanced(rng, n, args.bound)
            if theta_bs(vs) != mu(vs).scale(Fraction(factorial(n), 6)):
                failures.append([list(v) for v in vs])
            checked += 1
    text = f"theta_N = (N!/6) mu_N: {checked - len(failures)}/{checked} tuples agree"
    _emit(args, {"checked": checked, "failures": failures}, text)
    return EXIT_OK if not failures else EXIT_FAILED


def cmd_moyal_verify(args) -> int:
    rng = random.Random(args.seed)
    failures = []
    checked = 0
    for d in range(1, args.max_d + 1):
        for _ in range(args.trials):
            a = [rng.randint(-args.bound, args.bound) for _ in range(d + 1)]
            b = [rng.randint(-args.bound, args.bound) for _ in range(d + 1)]
            if not verify_moyal_claim(a, b, args.order):
                failures.append({"a": a, "b": b})
            checked += 1
    text = f"symmetrized star vs cosine product: {checked - len(failures)}/{checked} agree to eps^{args.order}"
    _emit(args, {"checked": checked, "failures": failures}, text)
    return EXIT_OK if not failures else EXIT_FAILED


def cmd_oracle(args) -> int:
    if args.degree < 1:
        raise ProblemError("degree", "degree must be positive")
    value = kontsevich(args.degree)
    _emit(args, {"degree": args.degree, "N": value}, f"N_{args.degree} = {value}")
    return EXIT_OK


def cmd_render(args) -> int:
    _, degree, profile, config, seed, convention, _ = _problem(args)
    result = count_refined(degree, profile, points=config, seed=seed, convention=convention, labeled=args.labeled_ends)
    written = write_svgs(result, args.output)
    _emit(args, {"files": [str(p) for p in written]}, "\n".join(str(p) for p in written) or "no curves")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropcount", description="Refined tropical counts with descendant point conditions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def problem_command(name: str, func, help_text: str, counting: bool = True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", help="problem file (JSON)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--labeled-ends", action="store_true", help="tell equal ends apart")
        if counting:
            p.add_argument("--seed", type=int, help="first seed for sampling points")
            p.add_argument("--convention", choices=[c.value for c in Normalization])
        p.set_defaults(func=func)
        return p

    p = problem_command("count", cmd_count, "refined count through points")
    p.add_argument("--truncation", type=int, help="order of the u-expansion")
    p.add_argument("--method", choices=["search", "enumerate"], default="search")
    problem_command("enumerate", cmd_enumerate, "list combinatorial types", counting=False)
    p = problem_command("invariance", cmd_invariance, "compare counts over several seeds")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--workers", type=int, help="processes (default $TROPCOUNT_WORKERS or 1)")
    p = problem_command("render", cmd_render, "write one SVG per counted curve")
    p.add_argument("--output", default=".", help="output directory")

    p = sub.add_parser("vertex-series", help="per-vertex generating series")
    p.add_argument("kind", choices=["f3u", "fmp", "igd"])
    p.add_argument("--vectors", help="'x,y;x,y;...' for f3u and fmp")
    p.add_argument("--a", help="comma separated a_j for igd")
    p.add_argument("--b", help="comma separated b_j for igd")
    p.add_argument("--truncation", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_vertex_series)

    p = sub.add_parser("bs-identity", help="theta_N against (N!/6) mu_N on random tuples")
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--bound", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bs_identity)

    p = sub.add_parser("moyal-verify", help="symmetrized Moyal products against cosine products")
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_moyal_verify)

    p = sub.add_parser("oracle", help="Kontsevich number N_d")
    p.add_argument("degree", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ProblemError as exc:
        print(f"invalid problem: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GenericityExhausted as exc:
        print(f"genericity: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
