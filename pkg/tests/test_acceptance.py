"""Acceptance criteria, one test each.

Every test appends a PASS/FAIL line to LEDGER; pytest prints the ledger in
its terminal summary and ``python tests/test_acceptance.py`` prints it
directly.  Timed criteria whose budget covers a cold start run in a fresh
interpreter so that caches warmed by other tests cannot flatter them.
"""
from __future__ import annotations

import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from functools import cache
from math import factorial

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from tropcount.algebra import GaussianRational, RefinedPolynomial, bracket_minus, bracket_plus  # noqa: E402
from tropcount.count import (  # noqa: E402
    CountResult,
    antipode_symmetric,
    classical_limit,
    count_refined,
    invariance_suite,
    u_expansion,
)
from tropcount.dr import curve_series_consistency, f3u_series, fmp_from_mu, fmp_series, verify_moyal_claim  # noqa: E402
from tropcount.incidence import sample_generic_points, solve_through_points  # noqa: E402
from tropcount.kontsevich import kontsevich  # noqa: E402
from tropcount.lattice import random_balanced, trivalent_count, validate_problem  # noqa: E402
from tropcount.moduli import audit_tree_decomposition, cone_dimension, enumerate_types  # noqa: E402
from tropcount.multiplicity import mu, theta_bs  # noqa: E402

import oracles  # noqa: E402
from conftest import EXAMPLE_DELTA, EXAMPLE_K, LINE_DELTA, SMALL_INSTANCES, library_class_key, plane_degree  # noqa: E402

# pinned tolerances: exact equality everywhere, wall-clock budgets in seconds
EXAMPLE_SEEDS = range(5)
EXAMPLE_BUDGET = 5.0
INVARIANCE_SEEDS = range(10)
INVARIANCE_BUDGET = 60.0
BS_RANGE, BS_TRIALS, BS_BOUND, BS_BUDGET = range(3, 7), 25, 5, 30.0
FMP_RANGE, FMP_TRIALS, FMP_BOUND = range(3, 6), 25, 5
SERIES_ORDER = 12
WEDGES = range(7)
MOYAL_DEGREES, MOYAL_TRIALS, MOYAL_BOUND, MOYAL_ORDER, MOYAL_BUDGET = (1, 2, 3), 20, 3, 8, 60.0
ORACLE_DEGREES = (1, 2, 3)
ORACLE_BUDGET = 60.0
RNG_SEED = 20241016

EXAMPLE_VALUE = bracket_plus(1) * bracket_minus(1) ** 3

INVARIANCE_INSTANCES = {
    "example": (EXAMPLE_DELTA, EXAMPLE_K, "example"),
    "line": (LINE_DELTA, [0, 0], "definition"),
    "conic": (plane_degree(2), [0] * 5, "definition"),
    "cubic": (plane_degree(3), [0] * 8, "definition"),
}

LEDGER: list[str] = []


def record(number: int, title: str, passed: bool, detail: str) -> bool:
    LEDGER.append(f"criterion {number:2d} [{'PASS' if passed else 'FAIL'}] {title}: {detail}")
    return passed


# -- jobs run in a fresh interpreter ---------------------------------------------


def _job_example() -> dict:
    start = time.perf_counter()
    results = [count_refined(EXAMPLE_DELTA, EXAMPLE_K, seed=s, convention="example") for s in EXAMPLE_SEEDS]
    elapsed = time.perf_counter() - start
    return {"elapsed": elapsed, "results": [r.to_json() for r in results]}


def _job_invariance() -> dict:
    start = time.perf_counter()
    out = {}
    for name, (delta, k, convention) in INVARIANCE_INSTANCES.items():
        out[name] = [count_refined(delta, k, seed=s, convention=convention).to_json() for s in INVARIANCE_SEEDS]
    return {"elapsed": time.perf_counter() - start, "results": out}


def _job_cubic() -> dict:
    start = time.perf_counter()
    result = count_refined(plane_degree(3), [0] * 8, seed=0)
    limit = classical_limit(result)
    return {"elapsed": time.perf_counter() - start, "limit": str(limit), "result": result.to_json()}


JOBS = {"example": _job_example, "invariance": _job_invariance, "cubic": _job_cubic}


@cache
def fresh(job: str) -> dict:
    env = dict(os.environ)
    env.pop("TROPCOUNT_WORKERS", None)
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--job", job], capture_output=True, text=True, env=env, check=True
    )
    return json.loads(proc.stdout)


def _results(objs) -> list[CountResult]:
    return [CountResult.from_json(o) for o in objs]


# -- criteria -------------------------------------------------------------------------


def test_criterion_01_worked_example():
    run = fresh("example")
    results = _results(run["results"])
    values = {r.polynomial for r in results}
    exact = values == {EXAMPLE_VALUE}
    fast = run["elapsed"] < EXAMPLE_BUDGET
    ok = record(
        1,
        "worked example",
        exact and fast,
        f"{len(results)} seeds give {' | '.join(sorted(v.to_text() for v in values))} in {run['elapsed']:.2f}s "
        f"(budget {EXAMPLE_BUDGET}s)",
    )
    assert ok


def test_criterion_02_deformation_invariance():
    run = fresh("invariance")
    parts, exact = [], True
    for name, objs in run["results"].items():
        polys = {r.polynomial for r in _results(objs)}
        exact &= len(polys) == 1
        parts.append(f"{name} {'invariant' if len(polys) == 1 else f'{len(polys)} distinct values'}")
    fast = run["elapsed"] < INVARIANCE_BUDGET
    ok = record(
        2,
        "deformation invariance",
        exact and fast,
        f"{', '.join(parts)} over {len(INVARIANCE_SEEDS)} seeds in {run['elapsed']:.1f}s (budget {INVARIANCE_BUDGET}s)",
    )
    assert ok


def test_criterion_03_closed_form_of_the_recursive_multiplicity():
    rng = random.Random(RNG_SEED)
    start = time.perf_counter()
    bad = checked = 0
    for n in BS_RANGE:
        for _ in range(BS_TRIALS):
            vs = random_balanced(rng, n, BS_BOUND)
            checked += 1
            bad += theta_bs(vs) != mu(vs).scale(Fraction(factorial(n), 6))
    elapsed = time.perf_counter() - start
    ok = record(
        3,
        "theta_N = (N!/6) mu_N",
        not bad and elapsed < BS_BUDGET,
        f"{checked - bad}/{checked} tuples in {elapsed:.2f}s (budget {BS_BUDGET}s)",
    )
    assert ok


def test_criterion_04_pointed_vertex_series():
    rng = random.Random(RNG_SEED + 1)
    bad = checked = 0
    for m in FMP_RANGE:
        for _ in range(FMP_TRIALS):
            vs = random_balanced(rng, m, FMP_BOUND)
            checked += 1
            bad += fmp_series(vs, SERIES_ORDER) != fmp_from_mu(vs, SERIES_ORDER)
    ok = record(4, "pointed vertex series", not bad, f"{checked - bad}/{checked} tuples agree to u^{SERIES_ORDER}")
    assert ok


def test_criterion_05_trivalent_series():
    bad = []
    for w in WEDGES:
        v1, v2 = ((1, 0), (2, 0)) if w == 0 else ((1, 0), (3, w))
        raw = bracket_minus(w).scale(GaussianRational(0, -1))
        if f3u_series(v1, v2, SERIES_ORDER) != raw.substitute_exponential(SERIES_ORDER):
            bad.append(w)
    ok = record(5, "trivalent series", not bad, f"wedges {WEDGES.start}..{WEDGES.stop - 1}, mismatches {bad or 'none'}")
    assert ok


def test_criterion_06_moyal_claim():
    rng = random.Random(RNG_SEED + 2)
    start = time.perf_counter()
    bad = checked = 0
    for d in MOYAL_DEGREES:
        for _ in range(MOYAL_TRIALS):
            a = [rng.randint(-MOYAL_BOUND, MOYAL_BOUND) for _ in range(d + 1)]
            b = [rng.randint(-MOYAL_BOUND, MOYAL_BOUND) for _ in range(d + 1)]
            checked += 1
            bad += not verify_moyal_claim(a, b, MOYAL_ORDER)
    elapsed = time.perf_counter() - start
    ok = record(
        6,
        "Moyal claim",
        not bad and elapsed < MOYAL_BUDGET,
        f"{checked - bad}/{checked} tuples to eps^{MOYAL_ORDER} in {elapsed:.2f}s (budget {MOYAL_BUDGET}s)",
    )
    assert ok


def test_criterion_07_classical_limit_against_oracle():
    limits = {}
    for d in ORACLE_DEGREES[:-1]:
        limits[d] = classical_limit(count_refined(plane_degree(d), [0] * (3 * d - 1), seed=0))
    cubic = fresh("cubic")
    limits[3] = Fraction(cubic["limit"])
    expected = {d: kontsevich(d) for d in ORACLE_DEGREES}
    fast = cubic["elapsed"] < ORACLE_BUDGET
    ok = record(
        7,
        "classical limit vs WDVV oracle",
        limits == expected and fast,
        f"limits {[str(limits[d]) for d in ORACLE_DEGREES]} vs {[expected[d] for d in ORACLE_DEGREES]}, "
        f"degree 3 in {cubic['elapsed']:.1f}s (budget {ORACLE_BUDGET}s)",
    )
    assert ok


def _computed_counts() -> list[CountResult]:
    out = _results(fresh("example")["results"])
    for objs in fresh("invariance")["results"].values():
        out.extend(_results(objs))
    for k in ([1, 0, 0, 0], [2, 0, 0], [1, 1, 0], [3, 0]):
        out.append(count_refined(plane_degree(2), k, seed=1, convention="example"))
    return out


def test_criterion_08_structural_invariants():
    problems = []
    types_checked = solved = 0
    for delta, k in SMALL_INSTANCES + [(EXAMPLE_DELTA, EXAMPLE_K)]:
        degree, profile = validate_problem(delta, k)
        types = enumerate_types(degree, profile)
        configs = [sample_generic_points(profile.n, s) for s in range(2)]
        for t in types:
            types_checked += 1
            if cone_dimension(t) != 2 * profile.n - 2:
                problems.append(f"{delta} {k}: cone dimension {cone_dimension(t)}")
            if len(t.unpointed_vertices()) != trivalent_count(degree, profile):
                problems.append(f"{delta} {k}: wrong number of trivalent vertices")
            for config in configs:
                if solve_through_points(t, config).solved:
                    solved += 1
                    if not audit_tree_decomposition(t):
                        problems.append(f"{delta} {k}: solvable type fails the tree audit")
    counts = _computed_counts()
    for r in counts:
        try:
            u_expansion(r, r.trivalent + 8)
        except AssertionError as exc:
            problems.append(f"expansion: {exc}")
        if not antipode_symmetric(r):
            problems.append(f"antipode fails for {r.polynomial}")
    ok = record(
        8,
        "structural invariants",
        not problems,
        f"{types_checked} types ({solved} solved), {len(counts)} counts; problems: {problems[:3] or 'none'}",
    )
    assert ok


def test_criterion_09_per_curve_consistency():
    curves = [c for r in _computed_counts()[: len(EXAMPLE_SEEDS) + 4 * len(INVARIANCE_SEEDS)] for c, _ in r.curves]
    bad = sum(not curve_series_consistency(c, SERIES_ORDER) for c in curves)
    ok = record(9, "per-curve series consistency", not bad, f"{len(curves) - bad}/{len(curves)} curves to u^{SERIES_ORDER}")
    assert ok


def test_criterion_10_enumeration_completeness():
    mismatched = []
    for delta, k in SMALL_INSTANCES:
        degree, profile = validate_problem(delta, k)
        for labeled in (True, False):
            ours = {library_class_key(t, labeled) for t in enumerate_types(degree, profile, labeled=labeled)}
            if ours != oracles.brute_force_classes(delta, k, labeled):
                mismatched.append((delta, k, labeled))
    ok = record(
        10,
        "enumeration vs brute-force trees",
        not mismatched,
        f"{2 * len(SMALL_INSTANCES)} problem/mode pairs with n + r <= 7, mismatches {mismatched or 'none'}",
    )
    assert ok


def _main(argv: list[str]) -> int:
    if len(argv) == 2 and argv[0] == "--job":
        print(json.dumps(JOBS[argv[1]]()))
        return 0
    status = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                status = 1
    print("\n".join(LEDGER))
    return status


if __name__ == "__main__":
    sys.exit(_main(sys.argv[1:]))
