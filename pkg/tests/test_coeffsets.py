from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logsurf.coeffsets import (
    C0,
    C1,
    C2,
    CoeffSet,
    accumulation_points,
    contains,
    derivative_members,
    is_standard,
    t_m,
    t_m_lower_bound_check,
)
from logsurf.rational import frac_part, parse_rational


def brute_t_m(cset: CoeffSet, m: int, n_max: int) -> Fraction:
    best = Fraction(1)
    for b in cset.members(n_max):
        fp = frac_part(m * b)
        if fp:
            best = max(best, (1 - b) / fp)
    return best


def test_presets_membership():
    assert not contains(C0, 1)
    assert contains(C1, 1) and not contains(C1, Fraction(1, 2))
    assert contains(C2, Fraction(5, 6)) and contains(C2, 1)
    assert not contains(C2, Fraction(2, 3) + Fraction(1, 100))
    assert Fraction(1, 2) in C2


def test_zero_is_the_n_equals_one_member():
    assert is_standard(Fraction(0))
    assert not is_standard(Fraction(1))
    assert not is_standard(Fraction(-1, 2))


def test_finite_part_rejects_out_of_range_and_duplicates():
    with pytest.raises(ValueError):
        CoeffSet((Fraction(0),))
    with pytest.raises(ValueError):
        CoeffSet((Fraction(3, 2),))
    with pytest.raises(ValueError):
        CoeffSet((Fraction(1, 2), Fraction(2, 4)))


def test_json_round_trip_and_presets():
    s = CoeffSet.finite(["1/3", "1/2"]).union(C1)
    assert CoeffSet.from_json(s.to_json()) == s
    assert CoeffSet.from_json("C2") is C2
    with pytest.raises(ValueError):
        CoeffSet.from_json("C7")
    with pytest.raises(ValueError):
        CoeffSet.from_json({"finite": ["0.5"]})


def test_accumulation_points():
    assert accumulation_points(C2) == C1
    assert accumulation_points(C1).is_empty()
    assert accumulation_points(CoeffSet.finite(["1/2"])).is_empty()


@pytest.mark.parametrize("m", range(1, 51))
def test_t_m_standard_matches_brute_force(m):
    assert t_m(C2, m) == brute_t_m(C2, m, 10 * m) == 1


@pytest.mark.parametrize("m", [1, 2, 3, 5, 12, 60])
def test_t_m_finite_sets(m):
    cset = CoeffSet.finite(["1/3", "2/5", "5/7"])
    assert t_m(cset, m) == brute_t_m(cset, m, 2)


def test_t_m_known_value():
    # b = 1/3, m = 2: (1 - 1/3) / {2/3} = 1
    # b = 1/5, m = 3: (4/5) / (3/5) = 4/3
    assert t_m(CoeffSet.finite(["1/5"]), 3) == Fraction(4, 3)
    assert t_m_lower_bound_check(CoeffSet.finite(["1/5"]), 3, Fraction(1, 5))
    with pytest.raises(ValueError):
        t_m_lower_bound_check(C2, 3, Fraction(2, 5))


@given(st.integers(1, 40), st.integers(2, 200))
def test_t_m_dominates_every_member(m, n):
    b = 1 - Fraction(1, n)
    fp = frac_part(m * b)
    if fp:
        assert (1 - b) / fp <= t_m(C2, m)


@pytest.mark.parametrize("max_m,max_terms", [(1, 1), (4, 3), (12, 6)])
def test_derivative_of_standard_is_standard(max_m, max_terms):
    for q in derivative_members(C2, max_m, max_terms):
        assert contains(C2, q), q


def test_derivative_of_empty_set_is_standard():
    members = derivative_members(C0, 6, 0)
    assert members == sorted({1 - Fraction(1, m) for m in range(1, 7)} | {Fraction(1)})


def test_derivative_of_a_finite_set_can_leave_the_standard_family():
    members = derivative_members(CoeffSet.finite(["1/3"]), 2, 1)
    assert Fraction(2, 3) in members  # 1 - (1 - 1/3)/2
    assert not all(contains(C2, q) for q in members)


def test_parse_rational_rejects_inexact_input():
    assert parse_rational("3/6") == Fraction(1, 2)
    for bad in ["0.5", "1e3", ""]:
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(TypeError):
        parse_rational(0.5)
