from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropcount.count import find_curves
from tropcount.incidence import (
    NON_POSITIVE_LENGTH,
    SINGULAR,
    PointConfiguration,
    SolveOutcome,
    canonical_curve,
    genericity_audit,
    sample_generic_points,
    solve_through_points,
)
from tropcount.lattice import validate_problem
from tropcount.moduli import enumerate_types

from conftest import EXAMPLE_DELTA, EXAMPLE_K, LINE_DELTA, plane_degree


def _line_types():
    degree, profile = validate_problem(LINE_DELTA, [0, 0])
    return enumerate_types(degree, profile)


def test_line_solution_by_hand():
    config = PointConfiguration(((0, 0), (2, 1)))
    solved = [o for o in (solve_through_points(t, config) for t in _line_types()) if o.solved]
    (outcome,) = solved
    curve = outcome.curve
    assert curve.residuals_ok(config)
    # the vertex of the line sits at (1, 1): the point (0, 0) on the
    # (-1, -1) leg and (2, 1) on the (1, 0) leg
    centre = [curve.positions[v] for v in curve.type.unpointed_vertices()]
    assert centre == [(1, 1)]
    assert sorted(curve.lengths) == [1, 1]


def test_non_positive_length_is_a_miss():
    config = PointConfiguration(((0, 0), (2, 1)))
    reasons = {solve_through_points(t, config).reason for t in _line_types()}
    assert NON_POSITIVE_LENGTH in reasons and SINGULAR in reasons


def test_wrong_cone_dimension():
    degree, profile = validate_problem(LINE_DELTA, [1])
    (t,) = enumerate_types(degree, profile)
    with pytest.raises(ValueError):
        solve_through_points(t, PointConfiguration(((0, 0), (1, 0))))


def test_sampling():
    one = sample_generic_points(1, 3)
    assert len(one) == 1
    assert sample_generic_points(4, 11) == sample_generic_points(4, 11)
    four = sample_generic_points(4, 11)
    assert len(set(four.points)) == 4
    dens = [c.denominator for p in sample_generic_points(9, 2).points for c in p]
    assert len(set(dens)) == 18 and all(d > 100 for d in dens)
    with pytest.raises(ValueError):
        sample_generic_points(0, 1)


def test_configuration_rejects_repeats():
    with pytest.raises(ValueError):
        PointConfiguration(((0, 0), (0, 0)))


def test_audit():
    config = PointConfiguration(((0, 0), (2, 1)))
    outcomes = [(i, solve_through_points(t, config)) for i, t in enumerate(_line_types())]
    assert genericity_audit(outcomes)
    boundary = SolveOutcome(NON_POSITIVE_LENGTH, lengths=(Fraction(0), Fraction(1)))
    report = genericity_audit(outcomes + [("edge", boundary)])
    assert not report and "edge" in report.diagnostics[0]
    solved = next(o for o in outcomes if o[1].solved)
    report = genericity_audit(outcomes + [("copy", solved[1])])
    assert not report and "coincide" in report.diagnostics[0]


@pytest.mark.parametrize(
    "delta, k, seeds",
    [
        (LINE_DELTA, [0, 0], range(5)),
        (EXAMPLE_DELTA, EXAMPLE_K, range(3)),
        (plane_degree(2), [1, 0, 0, 0], range(1)),
        (plane_degree(2), [2, 0, 0], range(3)),
        (plane_degree(2), [1, 1, 0], range(3)),
        ([(1, 0), (1, 0), (0, 2), (-1, -1), (-1, -1)], [1, 1], range(3)),
        ([(1, 0), (0, 1), (-1, 0), (0, -1)], [0, 0, 0], range(3)),
    ],
)
def test_search_matches_enumeration(delta, k, seeds):
    degree, profile = validate_problem(delta, k)
    for seed in seeds:
        config = sample_generic_points(profile.n, seed)
        by_search = find_curves(degree, profile, config, "search")
        by_types = find_curves(degree, profile, config, "enumerate")
        assert by_search == by_types
        for c in by_search:
            assert c.residuals_ok(config)
            assert canonical_curve(c) == c


@given(st.integers(0, 10**6))
def test_line_always_has_one_curve(seed):
    degree, profile = validate_problem(LINE_DELTA, [0, 0])
    config = sample_generic_points(2, seed, bound=50)
    assert len(find_curves(degree, profile, config)) == 1
