from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from tropcount.kontsevich import kontsevich, kontsevich_table
from tropcount.linalg import SingularMatrixError, bareiss_determinant, solve_integer_system

square = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(square)
def test_determinant_matches_sympy(m):
    assert bareiss_determinant(m) == sympy.Matrix(m).det()


@given(square, st.data())
def test_solve_round_trip(m, data):
    n = len(m)
    rhs = data.draw(st.lists(st.fractions(max_denominator=30).filter(lambda x: abs(x) < 100), min_size=n, max_size=n))
    if bareiss_determinant(m) == 0:
        with pytest.raises(SingularMatrixError):
            solve_integer_system(m, rhs)
        return
    x = solve_integer_system(m, rhs)
    assert [sum(a * xi for a, xi in zip(row, x)) for row in m] == rhs


def test_solve_small():
    assert solve_integer_system([[2, 0], [0, 3]], [1, Fraction(1, 2)]) == [Fraction(1, 2), Fraction(1, 6)]
    with pytest.raises(ValueError):
        solve_integer_system([[1, 2]], [1])


def test_kontsevich_values():
    assert [kontsevich(d) for d in (1, 2, 3, 4, 5)] == [1, 1, 12, 620, 87304]


def test_kontsevich_memo_agrees_with_loop():
    assert kontsevich_table(9) == [kontsevich(d) for d in range(1, 10)]


@pytest.mark.parametrize("d", [0, -2, 1.5, True])
def test_kontsevich_rejects(d):
    with pytest.raises(ValueError):
        kontsevich(d)
