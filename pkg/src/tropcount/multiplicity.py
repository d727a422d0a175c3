"""Vertex multiplicities: cyclic-order statistics, mu_N, the recursive
theta multiplicity and the per-vertex m_V conventions."""
from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Sequence

from .algebra import GaussianRational, RefinedPolynomial, bracket_minus, bracket_plus
from .lattice import Vec, vec, vsum, wedge


class Normalization(str, Enum):
    """How much of the vertex bookkeeping is kept.

    RAW keeps every factor, including the (-i) of each unpointed trivalent
    vertex.  DEFINITION drops that (-i) but keeps the 1/(N-1)! of pointed
    vertices.  EXAMPLE additionally drops the factorial, which is the
    normalization under which the worked six-end example evaluates to
    (q^(1/2)+q^(-1/2))(q^(1/2)-q^(-1/2))^3.
    """

    RAW = "raw"
    DEFINITION = "definition"
    EXAMPLE = "example"


class VertexKind(str, Enum):
    UNPOINTED_TRIVALENT = "unpointed-trivalent"
    POINTED = "pointed"


class BalancingError(ValueError):
    pass


def _check_balanced(vectors: Sequence[Sequence[int]]) -> tuple[Vec, ...]:
    vs = tuple(vec(v) for v in vectors)
    if not vsum(vs).is_zero():
        raise BalancingError(f"vectors {vs} do not sum to zero")
    return vs


def cyclic_orders(n: int) -> list[tuple[int, ...]]:
    """Representatives of the (n-1)! cyclic orders on range(n), each
    starting with 0."""
    if n < 1:
        return []
    return [(0, *rest) for rest in permutations(range(1, n))]


def k_omega(vectors: Sequence[Sequence[int]], order: Sequence[int]) -> int:
    """sum over positions 2 <= i < j <= N of a_{order(i)} ^ a_{order(j)}.

    ``order`` is any representative of the cyclic order (0-based indices);
    for balanced input the value does not depend on the representative.
    """
    vs = _check_balanced(vectors)
    if len(vs) < 2:
        raise ValueError("k(omega) needs at least two vectors")
    if sorted(order) != list(range(len(vs))):
        raise ValueError(f"{order} is not a permutation of range({len(vs)})")
    tail = [vs[i] for i in order[1:]]
    total = 0
    running = Vec(0, 0)
    for a in tail:
        total += wedge(running, a)
        running = running + a
    return total


@lru_cache(maxsize=None)
def _mu_cached(vs: tuple[Vec, ...]) -> RefinedPolynomial:
    counts: dict[int, int] = {}
    for order in cyclic_orders(len(vs)):
        total = 0
        running = Vec(0, 0)
        for i in order[1:]:
            total += wedge(running, vs[i])
            running = running + vs[i]
        counts[total] = counts.get(total, 0) + 1
    return RefinedPolynomial(counts)


def mu(vectors: Sequence[Sequence[int]]) -> RefinedPolynomial:
    """sum over cyclic orders omega of q^{k(omega)/2}."""
    vs = _check_balanced(vectors)
    if len(vs) < 2:
        raise ValueError("mu needs at least two vectors")
    return _mu_cached(vs)


@lru_cache(maxsize=None)
def _theta_cached(vs: tuple[Vec, ...]) -> RefinedPolynomial:
    if len(vs) == 3:
        return bracket_plus(wedge(vs[0], vs[1]))
    total = RefinedPolynomial()
    n = len(vs)
    for i in range(n):
        for j in range(i + 1, n):
            merged = vs[i] + vs[j]
            rest = tuple(vs[k] for k in range(n) if k != i and k != j) + (merged,)
            total = total + _theta_cached(rest) * bracket_plus(wedge(vs[i], vs[j]))
    return total


def theta_bs(vectors: Sequence[Sequence[int]]) -> RefinedPolynomial:
    """The theta multiplicity, by its defining recursion.

    The cache is keyed on the ordered tuple, so no symmetry of the
    recursion is assumed.
    """
    vs = _check_balanced(vectors)
    if len(vs) < 3:
        raise ValueError("theta_N is defined for N >= 3")
    return _theta_cached(vs)


def vertex_multiplicity(
    kind: VertexKind | str,
    vectors: Sequence[Sequence[int]],
    normalization: Normalization | str = Normalization.DEFINITION,
) -> RefinedPolynomial:
    kind = VertexKind(kind)
    normalization = Normalization(normalization)
    vs = _check_balanced(vectors)
    if kind is VertexKind.UNPOINTED_TRIVALENT:
        if len(vs) != 3 or any(v.is_zero() for v in vs):
            raise ValueError("an unpointed trivalent vertex needs exactly three non-zero vectors")
        m = bracket_minus(abs(wedge(vs[0], vs[1])))
        if normalization is Normalization.RAW:
            return m.scale(GaussianRational(0, -1))
        return m
    if len(vs) < 2:
        raise ValueError("a pointed vertex has valency at least two")
    if len(vs) == 2:
        return RefinedPolynomial.constant(1)
    m = mu(vs)
    if normalization is Normalization.EXAMPLE:
        return m
    return m.scale(Fraction(1, factorial(len(vs) - 1)))
