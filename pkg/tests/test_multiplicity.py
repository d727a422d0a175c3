import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropcount.algebra import GaussianRational, RefinedPolynomial, bracket_minus, bracket_plus
from tropcount.lattice import random_balanced, wedge
from tropcount.multiplicity import (
    BalancingError,
    Normalization,
    VertexKind,
    cyclic_orders,
    k_omega,
    mu,
    theta_bs,
    vertex_multiplicity,
)

import oracles

SQUARE = [(1, 0), (0, 1), (-1, 0), (0, -1)]
UNIT = [(1, 0), (0, 1), (-1, -1)]


def balanced(max_n=6, bound=5):
    return st.builds(
        lambda seed, n: random_balanced(random.Random(seed), n, bound),
        st.integers(0, 2**32),
        st.integers(3, max_n),
    )


def test_cyclic_order_count():
    for n in range(1, 7):
        orders = cyclic_orders(n)
        assert len(orders) == factorial(n - 1) == len(set(orders))
        assert all(o[0] == 0 for o in orders)


def test_k_omega_examples():
    assert wedge(*UNIT[:2]) == 1
    assert k_omega(UNIT, (0, 1, 2)) == 1
    assert k_omega(UNIT, (0, 2, 1)) == -1
    assert k_omega([(2, 1), (-2, -1)], (0, 1)) == 0


def test_k_omega_rejects_unbalanced():
    with pytest.raises(BalancingError):
        k_omega([(1, 0), (0, 1)], (0, 1))


@given(balanced(), st.integers(0, 10**6))
def test_k_omega_representative_independent(vs, pick):
    orders = cyclic_orders(len(vs))
    order = orders[pick % len(orders)]
    values = {k_omega(vs, order[r:] + order[:r]) for r in range(len(vs))}
    assert len(values) == 1


def test_mu_examples():
    assert mu(UNIT) == bracket_plus(1)
    assert mu([(3, 1), (-3, -1)]) == RefinedPolynomial.constant(1)
    assert mu(SQUARE) == RefinedPolynomial(oracles.mu_by_rotations(SQUARE))
    assert mu(SQUARE) == RefinedPolynomial({2: 1, 0: 4, -2: 1})


@given(balanced())
def test_mu_matches_rotation_oracle(vs):
    assert mu(vs) == RefinedPolynomial(oracles.mu_by_rotations(vs))


@given(balanced(), st.randoms())
def test_mu_properties(vs, rnd):
    m = mu(vs)
    assert m.antipode() == m
    assert m.at_one() == factorial(len(vs) - 1)
    shuffled = list(vs)
    rnd.shuffle(shuffled)
    assert mu(shuffled) == m


def test_theta_examples():
    assert theta_bs(UNIT) == bracket_plus(1)
    assert theta_bs(SQUARE) == mu(SQUARE).scale(4)
    assert theta_bs([(1, 0), (2, 0), (-3, 0)]) == RefinedPolynomial.constant(2)
    with pytest.raises(ValueError):
        theta_bs([(1, 0), (-1, 0)])


@given(balanced())
def test_theta_closed_form(vs):
    assert theta_bs(vs) == mu(vs).scale(Fraction(factorial(len(vs)), 6))


def test_vertex_multiplicity_conventions():
    s_minus = bracket_minus(1)
    assert vertex_multiplicity(VertexKind.UNPOINTED_TRIVALENT, UNIT, Normalization.EXAMPLE) == s_minus
    assert vertex_multiplicity("unpointed-trivalent", UNIT, "definition") == s_minus
    assert vertex_multiplicity("unpointed-trivalent", UNIT, "raw") == s_minus.scale(GaussianRational(0, -1))
    assert vertex_multiplicity("pointed", UNIT, "example") == bracket_plus(1)
    assert vertex_multiplicity("pointed", UNIT, "definition") == bracket_plus(1).scale(Fraction(1, 2))
    assert vertex_multiplicity("pointed", [(1, 0), (-1, 0)], "example") == RefinedPolynomial.constant(1)


def test_trivalent_sign_is_orientation_free():
    reversed_unit = [UNIT[1], UNIT[0], UNIT[2]]
    assert vertex_multiplicity("unpointed-trivalent", reversed_unit) == bracket_minus(1)


def test_vertex_multiplicity_arity():
    with pytest.raises(ValueError):
        vertex_multiplicity("unpointed-trivalent", SQUARE)
    with pytest.raises(ValueError):
        vertex_multiplicity("pointed", [(0, 0)])


@given(balanced())
def test_pointed_definition_is_one_at_q1(vs):
    assert vertex_multiplicity("pointed", vs, "definition").at_one() == 1
