"""Refined counts: sum over rigid curves of the product of vertex
multiplicities, plus the u-expansion and seed-invariance checks."""
from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .algebra import GaussianRational, RefinedPolynomial, USeries
from .lattice import Degree, DescendantProfile, trivalent_count, validate_problem
from .moduli import audit_tree_decomposition, automorphism_count, canonical_form, enumerate_types
from .multiplicity import Normalization, VertexKind, vertex_multiplicity
from .incidence import (
    SINGULAR,
    AuditReport,
    NonGenericPoints,
    ParametrizedTropicalCurve,
    PointConfiguration,
    SolveOutcome,
    canonical_curve,
    genericity_audit,
    sample_generic_points,
    search_curves,
    solve_through_points,
)

MAX_RESAMPLES = 32


class GenericityExhausted(RuntimeError):
    def __init__(self, attempts: int, diagnostics: list[str]):
        super().__init__(f"no generic configuration after {attempts} attempts: {'; '.join(diagnostics[-3:])}")
        self.attempts = attempts
        self.diagnostics = diagnostics


class ConsistencyError(AssertionError):
    """A structural property of the expansion failed; this is a bug."""


def curve_multiplicity(curve: ParametrizedTropicalCurve, convention: Normalization | str) -> RefinedPolynomial:
    t = curve.type
    total = RefinedPolynomial.constant(1)
    for v in range(t.num_vertices):
        kind = VertexKind.POINTED if t.markers[v] else VertexKind.UNPOINTED_TRIVALENT
        total = total * vertex_multiplicity(kind, t.outgoing(v), convention)
    return total


def symmetry_weight(curve: ParametrizedTropicalCurve, labeled: bool = False) -> Fraction:
    """1/|Aut| of the curve with its equal ends unlabeled.  With
    ``labeled`` this is scaled to the number of distinct end labelings."""
    t = curve.type
    w = Fraction(1, automorphism_count(canonical_form(t, labeled=False)))
    if labeled:
        for m in Counter(t.degree).values():
            w *= factorial(m)
    return w


@dataclass
class CountResult:
    polynomial: RefinedPolynomial
    convention: Normalization
    curves: list[tuple[ParametrizedTropicalCurve, RefinedPolynomial]]
    seed: int | None
    points: PointConfiguration
    trivalent: int
    labeled: bool = False
    attempts: int = 1
    diagnostics: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_json(),
            "text": self.polynomial.to_text(),
            "convention": self.convention.value,
            "seed": self.seed,
            "points": [[_q(x), _q(y)] for x, y in self.points.points],
            "trivalent": self.trivalent,
            "labeled": self.labeled,
            "curves": [{"curve": c.to_json(), "multiplicity": m.to_json()} for c, m in self.curves],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CountResult":
        return cls(
            polynomial=RefinedPolynomial.from_json(obj["polynomial"]),
            convention=Normalization(obj["convention"]),
            curves=[
                (ParametrizedTropicalCurve.from_json(c["curve"]), RefinedPolynomial.from_json(c["multiplicity"]))
                for c in obj["curves"]
            ],
            seed=obj["seed"],
            points=PointConfiguration(tuple((Fraction(x), Fraction(y)) for x, y in obj["points"]), obj["seed"]),
            trivalent=int(obj["trivalent"]),
            labeled=bool(obj.get("labeled", False)),
        )


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def find_curves_enumerate(
    degree: Degree, profile: DescendantProfile, config: PointConfiguration, labeled: bool = False
) -> tuple[list[ParametrizedTropicalCurve], AuditReport]:
    """Enumerate every type, solve each one, audit the batch."""
    results: list[tuple[int, SolveOutcome]] = []
    for idx, t in enumerate(enumerate_types(degree, profile, labeled=labeled)):
        if not audit_tree_decomposition(t):
            # such types have a singular system; no need to solve
            results.append((idx, SolveOutcome(SINGULAR)))
            continue
        results.append((idx, solve_through_points(t, config)))
    audit = genericity_audit(results, compare_images=not labeled)
    curves = [canonical_curve(o.curve, labeled) for _, o in results if o.solved]
    return curves, audit


def find_curves(
    degree: Degree, profile: DescendantProfile, config: PointConfiguration, method: str = "search"
) -> list[ParametrizedTropicalCurve]:
    """Rigid curves through ``config`` (ends up to relabeling).  Raises
    NonGenericPoints when the configuration is special."""
    if method == "search":
        curves = search_curves(degree, profile, config)
        for c in curves:
            # independent check through the per-type linear system
            o = solve_through_points(c.type, config)
            if not o.solved or o.curve.positions != c.positions or o.curve.lengths != c.lengths:
                raise NonGenericPoints("search result does not re-solve through its own type")
        images = {c.image_key() for c in curves}
        if len(images) != len(curves):
            raise NonGenericPoints("two curves share an image")
        return sorted(curves, key=_curve_sort_key)
    if method == "enumerate":
        curves, audit = find_curves_enumerate(degree, profile, config)
        if not audit:
            raise NonGenericPoints("; ".join(audit.diagnostics))
        return sorted(curves, key=_curve_sort_key)
    raise ValueError(f"unknown method {method!r}")


def _curve_sort_key(c: ParametrizedTropicalCurve) -> str:
    return json.dumps(c.to_json(), sort_keys=True)


def count_refined(
    degree: Degree | Sequence,
    profile: DescendantProfile | Sequence[int],
    points: PointConfiguration | None = None,
    seed: int | None = 0,
    convention: Normalization | str = Normalization.DEFINITION,
    labeled: bool = False,
    method: str = "search",
    bound: int = 1000,
) -> CountResult:
    """Refined count through ``points``, or through sampled points starting
    at ``seed`` (moving to the next seed while the sample is special).

    Each curve is weighted by 1/|Aut|, the symmetries permuting equal ends
    at a vertex.  With ``labeled`` the ends are told apart instead and each
    curve counts once per distinct labeling.
    """
    if not isinstance(degree, Degree) or not isinstance(profile, DescendantProfile):
        degree, profile = validate_problem(degree, profile)
    convention = Normalization(convention)
    diagnostics: list[str] = []
    attempts = 0
    while True:
        attempts += 1
        config = points if points is not None else sample_generic_points(profile.n, seed, bound)
        try:
            curves = find_curves(degree, profile, config, method)
            break
        except NonGenericPoints as exc:
            diagnostics.append(f"seed {config.seed}: {exc}")
            if points is not None or attempts >= MAX_RESAMPLES:
                raise GenericityExhausted(attempts, diagnostics) from exc
            seed += 1
    total = RefinedPolynomial()
    breakdown = []
    for c in curves:
        m = curve_multiplicity(c, convention)
        w = symmetry_weight(c, labeled)
        if w != 1:
            m = m.scale(w)
        breakdown.append((c, m))
        total = total + m
    return CountResult(
        polynomial=total,
        convention=convention,
        curves=breakdown,
        seed=config.seed,
        points=config,
        trivalent=trivalent_count(degree, profile),
        labeled=labeled,
        attempts=attempts,
        diagnostics=diagnostics,
    )


def to_raw(result: CountResult) -> RefinedPolynomial:
    """The count with the (-i) of every unpointed trivalent vertex restored."""
    if result.convention is Normalization.RAW:
        return result.polynomial
    return result.polynomial.scale(GaussianRational(0, -1) ** result.trivalent)


def u_expansion(result: CountResult, order: int) -> tuple[USeries, dict[int, Fraction]]:
    """Expand under q = e^{iu} through u^order and read off N_g, the
    coefficient of u^(2g+T)."""
    t = result.trivalent
    if order < t:
        raise ValueError(f"truncation order must be at least {t}")
    series = to_raw(result).substitute_exponential(order)
    if not series.is_real():
        raise ConsistencyError("u-expansion has non-real coefficients")
    coeffs = series.real_coefficients()
    for j, c in enumerate(coeffs):
        if c and (j < t or (j - t) % 2):
            raise ConsistencyError(f"unexpected u^{j} term in the expansion")
    return series, {(j - t) // 2: coeffs[j] for j in range(t, order + 1, 2)}


def classical_limit(result: CountResult) -> Fraction:
    _, ng = u_expansion(result, result.trivalent)
    return ng[0]


def antipode_symmetric(result: CountResult) -> bool:
    sign = -1 if result.trivalent % 2 else 1
    return result.polynomial.antipode() == result.polynomial.scale(sign)


@dataclass
class InvarianceReport:
    passed: bool
    polynomials: dict[int, RefinedPolynomial]

    def __bool__(self) -> bool:
        return self.passed


WORKERS_ENV = "TROPCOUNT_WORKERS"


def _worker_count(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, workers)


def _count_for_seed(args) -> RefinedPolynomial:
    degree, profile, seed, convention, kwargs = args
    return count_refined(degree, profile, seed=seed, convention=convention, **kwargs).polynomial


def invariance_suite(
    degree: Degree | Sequence,
    profile: DescendantProfile | Sequence[int],
    seeds: Iterable[int],
    convention: Normalization | str = Normalization.DEFINITION,
    workers: int | None = None,
    **kwargs,
) -> InvarianceReport:
    """Count through the sample of every seed and compare.  Seeds run in a
    process pool when ``workers`` (default: $TROPCOUNT_WORKERS) exceeds 1."""
    seeds = list(seeds)
    if len(seeds) < 2:
        raise ValueError("need at least two seeds")
    jobs = [(degree, profile, s, convention, kwargs) for s in seeds]
    n = _worker_count(workers)
    if n > 1:
        with ProcessPoolExecutor(n) as pool:
            results = list(pool.map(_count_for_seed, jobs))
    else:
        results = [_count_for_seed(j) for j in jobs]
    polys = dict(zip(seeds, results))
    return InvarianceReport(all(p == results[0] for p in results), polys)
