from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from logsurf.acceptance import random_chain_case
from logsurf.chains import (
    Chain,
    ChainBoundary,
    CorollaryNotApplicable,
    Hit,
    NotLogCanonical,
    chain_index,
    codiscrepancies,
    continuant,
    different,
    different_coefficient,
    different_from_system,
    log_discrepancies,
    parse_chain,
    parse_hits,
    verify_standard_different,
)

chains = st.lists(st.integers(2, 9), min_size=1, max_size=8).map(lambda p: Chain(tuple(p)))


def sympy_det(p) -> int:
    return int(sympy.Matrix(Chain(tuple(p)).matrix()).det())


def sympy_codiscrepancies(chain: Chain, bd: ChainBoundary) -> list[Fraction]:
    r = len(chain)
    m = sympy.Matrix(chain.matrix())
    rhs = [sympy.Rational(chain.p[k] - 2) for k in range(r)]
    rhs[0] += 1
    for h in bd.hits:
        rhs[h.index - 1] += h.multiplicity * sympy.Rational(h.coefficient.numerator, h.coefficient.denominator)
    sol = m.LUsolve(sympy.Matrix(rhs))
    return [Fraction(int(x.p), int(x.q)) for x in sol]


@given(chains)
def test_continuant_is_the_determinant(chain):
    assert continuant(chain.p) == sympy_det(chain.p)


def test_continuant_small_cases():
    assert continuant(()) == 1
    assert continuant((5,)) == 5
    assert continuant((2, 2, 2)) == 4  # A_3 has index 4
    assert continuant((2, 3, 6)) == 2 * 17 - 6  # 28
    with pytest.raises(ValueError):
        continuant((1, 3))


@given(chains)
def test_gram_is_negative_of_matrix(chain):
    m, g = chain.matrix(), chain.gram()
    assert all(m[i][j] == -g[i][j] for i in range(len(chain)) for j in range(len(chain)))


def test_worked_different():
    chain = parse_chain("2,3")
    d = different(chain, parse_hits("2:1:1/2"))
    assert (d.m, d.n, d.b_prime) == (5, (1,), Fraction(9, 10))
    assert codiscrepancies(chain, parse_hits("2:1:1/2")) == [Fraction(9, 10), Fraction(4, 5)]
    assert log_discrepancies(chain, parse_hits("2:1:1/2")) == [Fraction(1, 10), Fraction(1, 5)]


def test_hit_on_the_first_curve_is_not_lc():
    # n_1 = continuant((3,)) = 3, so b' = 1 - (1 - 3/2)/5 = 11/10
    bd = parse_hits("1:1:1/2")
    assert different(Chain((2, 3)), bd).b_prime == Fraction(11, 10)
    with pytest.raises(NotLogCanonical) as err:
        different_coefficient(Chain((2, 3)), bd)
    assert err.value.value == Fraction(11, 10)


def test_no_boundary_gives_one_minus_one_over_index():
    for p in [(2,), (3,), (2, 2, 2), (4, 2, 5)]:
        c = Chain(p)
        assert different_coefficient(c) == 1 - Fraction(1, continuant(p))
        assert different_from_system(c) == 1 - Fraction(1, continuant(p))


def test_smooth_point():
    bd = ChainBoundary((Hit(0, 1, Fraction(1, 2)), Hit(0, 1, Fraction(1, 3))))
    assert different_from_system(Chain(()), bd) == Fraction(5, 6)
    assert different(Chain(()), bd).b_prime == Fraction(5, 6)


def test_routes_agree_on_random_chains():
    rng = random.Random(2024)
    for _ in range(250):
        chain, bd = random_chain_case(rng)
        assert different_coefficient(chain, bd, check=False) == different_from_system(chain, bd)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_linear_system_matches_sympy(seed):
    chain, bd = random_chain_case(random.Random(seed))
    assert codiscrepancies(chain, bd) == sympy_codiscrepancies(chain, bd)


@given(chains, st.integers(2, 30))
def test_standard_corollary(chain, n_prime):
    b = 1 - Fraction(1, n_prime)
    n, m, got = verify_standard_different(chain, ChainBoundary((Hit(len(chain), 1, b),)))
    assert (m, got) == (chain_index(chain), n_prime)
    assert n == m * n_prime
    assert verify_standard_different(chain)[0] == chain_index(chain)


def test_corollary_not_applicable():
    with pytest.raises(CorollaryNotApplicable):
        verify_standard_different(Chain((2, 2)), parse_hits("1:1:1/2"))
    with pytest.raises(CorollaryNotApplicable):
        verify_standard_different(Chain((3,)), parse_hits("1:1:2/5"))


@given(chains, st.data())
def test_lc_iff_log_discrepancies_in_unit_interval(chain, data):
    hits = tuple(
        Hit(data.draw(st.integers(1, len(chain))), 1, 1 - Fraction(1, data.draw(st.integers(1, 6))) or Fraction(1))
        for _ in range(data.draw(st.integers(0, 2)))
    )
    hits = tuple(h for h in hits if h.coefficient > 0)
    bd = ChainBoundary(hits)
    a = log_discrepancies(chain, bd)
    b_prime = different(chain, bd).b_prime
    assert (b_prime <= 1) == all(0 <= x <= 1 for x in a)


def test_hit_validation():
    with pytest.raises(ValueError):
        Hit(1, 0, Fraction(1, 2))
    with pytest.raises(ValueError):
        Hit(1, 1, Fraction(3, 2))
    with pytest.raises(ValueError):
        ChainBoundary((Hit(3, 1, Fraction(1, 2)),)).validate(Chain((2, 2)))
    with pytest.raises(ValueError):
        parse_hits("1:1")
    with pytest.raises(ValueError):
        parse_hits("1:1:0.5")
