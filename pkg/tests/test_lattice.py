import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropcount.lattice import (
    BALANCE_VIOLATION,
    NEGATIVE_K,
    NONZERO_SUM,
    ZERO_ENTRY,
    ProblemError,
    Vec,
    lattice_length,
    random_balanced,
    trivalent_count,
    validate_problem,
    vsum,
    wedge,
)

from conftest import EXAMPLE_DELTA, EXAMPLE_K

ints = st.integers(-10**6, 10**6)
vectors = st.tuples(ints, ints)


@pytest.mark.parametrize(
    "v, w, expected", [((1, 0), (0, 1), 1), ((1, 1), (2, 2), 0), ((2, 1), (1, 1), 1)]
)
def test_wedge_values(v, w, expected):
    assert wedge(v, w) == expected


@pytest.mark.parametrize("v, expected", [((2, 4), 2), ((1, 0), 1), ((-3, -6), 3)])
def test_lattice_length_values(v, expected):
    assert lattice_length(v) == expected


def test_lattice_length_of_zero():
    with pytest.raises(ValueError, match="no lattice length"):
        lattice_length((0, 0))


@given(vectors, vectors)
def test_wedge_antisymmetric(v, w):
    assert wedge(v, w) == -wedge(w, v)
    assert wedge(v, v) == 0


@given(vectors, vectors, vectors, ints)
def test_wedge_bilinear(u, v, w, c):
    uv = (u[0] + v[0], u[1] + v[1])
    assert wedge(uv, w) == wedge(u, w) + wedge(v, w)
    assert wedge((c * u[0], c * u[1]), w) == c * wedge(u, w)


@given(vectors.filter(lambda v: v != (0, 0)), ints.filter(bool))
def test_lattice_length_scales(v, c):
    assert lattice_length((c * v[0], c * v[1])) == abs(c) * lattice_length(v)


def test_big_integers_stay_exact():
    big = 10**40 + 7
    assert wedge((big, 1), (1, big)) == big * big - 1


def test_validate_example():
    degree, profile = validate_problem(EXAMPLE_DELTA, EXAMPLE_K)
    assert len(degree) == 6 and profile.n == 4
    assert trivalent_count(degree, profile) == 3


def test_validate_line():
    degree, profile = validate_problem([(1, 0), (0, 1), (-1, -1)], [0, 0])
    assert profile.n == 2 and profile.valency(1) == 2


@pytest.mark.parametrize(
    "delta, k, code",
    [
        ([(1, 0), (-1, 0)], [], BALANCE_VIOLATION),
        ([(1, 0), (0, 0), (-1, 0)], [0], ZERO_ENTRY),
        ([(1, 0), (0, 1)], [0], NONZERO_SUM),
        ([(1, 0), (0, 1), (-1, -1)], [-1, 0], NEGATIVE_K),
        ([(1, 0), (0, 1), (-1, -1)], [0, 0, 0], BALANCE_VIOLATION),
    ],
)
def test_validate_errors(delta, k, code):
    with pytest.raises(ProblemError) as info:
        validate_problem(delta, k)
    assert info.value.code == code


def test_degree_multiplicities():
    degree, _ = validate_problem(EXAMPLE_DELTA, EXAMPLE_K)
    assert degree.multiplicities()[Vec(-1, 0)] == 2


@given(st.integers(0, 2**32), st.integers(2, 7), st.integers(1, 6))
def test_random_balanced(seed, n, bound):
    vs = random_balanced(random.Random(seed), n, bound)
    assert len(vs) == n and vsum(vs).is_zero()
    assert all(not v.is_zero() and max(abs(v.x), abs(v.y)) <= bound for v in vs)
