from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from logsurf.linalg import SingularMatrixError, det, is_negative_definite, solve

small = st.integers(-5, 5)
square = st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_det_matches_sympy(m):
    assert det(m) == int(sympy.Matrix(m).det())


@given(square, st.data())
def test_solve_matches_sympy(m, data):
    nonsingular = sympy.Matrix(m).det() != 0
    b = [Fraction(data.draw(small)) for _ in m]
    if not nonsingular:
        with pytest.raises(SingularMatrixError):
            solve(m, b)
        return
    x = solve(m, b)
    ref = sympy.Matrix(m).LUsolve(sympy.Matrix([int(v) for v in b]))
    assert x == [Fraction(int(v.p), int(v.q)) for v in ref]


@given(square)
def test_negative_definite_matches_sympy(m):
    sym = [[m[i][j] + m[j][i] for j in range(len(m))] for i in range(len(m))]
    # Sylvester: negative definite iff (-1)^k times the k-th leading minor is positive
    minors = [sympy.Matrix(sym)[:k, :k].det() for k in range(1, len(sym) + 1)]
    assert is_negative_definite(sym) == all((-1) ** k * d > 0 for k, d in enumerate(minors, start=1))


def test_small_cases():
    assert is_negative_definite([])
    assert is_negative_definite([[-2, 1], [1, -2]])
    assert not is_negative_definite([[-1, 1], [1, -1]])
    assert solve([[2, 1], [1, 3]], [Fraction(3), Fraction(5)]) == [Fraction(4, 5), Fraction(7, 5)]
