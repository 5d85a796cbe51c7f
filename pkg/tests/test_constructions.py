from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from logsurf.chains import NotLogCanonical
from logsurf.constructions import (
    bounds_table,
    cartier_multiples_C2,
    enumerate_standard_sums,
    example_even,
    example_odd,
    iterated_sequence,
    iterated_sweep,
    lower_bound,
    nklt_blowup_sequence,
    nklt_volume_sequence,
    perturb_coefficients,
)
from logsurf.surfaces import LogPair, NotBig, lc_check


@pytest.mark.parametrize("n", range(3, 12))
def test_even_example(n):
    pair, vol = example_even(n)
    assert vol == 2 * (n - 2)
    assert lc_check(pair).verdict == "lc"


@pytest.mark.parametrize("n", range(2, 12))
def test_odd_example(n):
    assert example_odd(n)[1] == 2 * n - 3


def test_odd_example_configuration():
    pair, _ = example_odd(3)
    s = pair.surface
    assert s.self_intersection("G0") == -1
    assert s.self_intersection("G1") == 1
    assert s.intersect({"G1": 1}, {"G2": 1}) == 1
    assert s.intersect({"F1": 1}, {"G0": 1}) == 1


def test_perturbation_approaches_from_below():
    pair, vol = example_even(4)
    values = [perturb_coefficients(pair, ["V1"], s)[1] for s in range(2, 12)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(v < vol for v in values)
    with pytest.raises(ValueError):
        perturb_coefficients(pair, ["V1"], 2, approach=lambda s: Fraction(3, 2))


def test_nklt_chain_on_even_example():
    pair, _ = example_even(3)
    r = nklt_blowup_sequence(pair, "H1", "V1", 5)
    assert r.value == Fraction(9, 5)
    assert r.diagnostics["self_intersections"] == {"E1": -2, "E2": -2, "E3": -2, "E4": -2, "E5": -1}
    assert r.diagnostics["exceptional_pairings"] == {"E1": 0, "E2": 0, "E3": 0, "E4": 0, "E5": Fraction(1, 5)}
    assert [r.pair.coefficient(f"E{i}") for i in range(1, 6)] == [Fraction(4 - i + 1, 5) for i in range(1, 6)]
    assert r.diagnostics["config_nef"]


def test_nklt_chain_with_fractional_second_coefficient():
    pair, _ = example_even(4)
    pair = LogPair(pair.surface, {**pair.boundary, "V1": Fraction(1, 2)})
    r = nklt_blowup_sequence(pair, "H1", "V1", 4)
    # the chain is crepant over the node except for the last curve
    assert [r.pair.coefficient(f"E{i}") for i in range(1, 5)] == [Fraction(3, 8), Fraction(1, 4), Fraction(1, 8), 0]
    assert r.value < r.diagnostics["base_volume"]


def test_nklt_sequence_limit():
    pair, _ = example_even(3)
    seq = nklt_volume_sequence(pair, "H1", "V1", 20)
    assert seq.limit == 2
    assert seq.strictly_increasing
    assert seq.gaps == tuple(Fraction(1, s) for s in range(1, 21))


def test_nklt_input_checks():
    pair, _ = example_even(3)
    with pytest.raises(ValueError):
        nklt_blowup_sequence(LogPair(pair.surface, {"H1": Fraction(1, 2), "V1": 1}), "H1", "V1", 2)
    with pytest.raises(ValueError):
        nklt_blowup_sequence(pair, "H1", "H2", 2)
    with pytest.raises(NotLogCanonical):
        nklt_blowup_sequence(LogPair(pair.surface, {"H1": 2}), "H1", "V1", 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 7).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(2, 9), min_size=n - 1, max_size=n - 1))))
def test_iterated_matches_closed_form(case):
    n, s = case
    closed = (n - 3) ** 2 - sum(Fraction(1, x) for x in s)
    if closed <= 0:
        with pytest.raises(NotBig):
            iterated_sequence(n, s)
        return
    r = iterated_sequence(n, s)
    assert r.value == closed
    assert r.diagnostics["line_pairings"][f"L{n}"] == n - 3 - sum(Fraction(1, x) for x in s)
    assert all(r.diagnostics["line_pairings"][f"L{j}"] == n - 4 for j in range(1, n))


def test_iterated_paper_values():
    assert iterated_sequence(5, [2, 2, 2, 2]).value == 2
    assert iterated_sequence(4, [4, 4, 4]).value == Fraction(1, 4)
    assert iterated_sequence(4, [2, 3, 7]).value == Fraction(1, 42)


def test_iterated_sweep_limit():
    seq = iterated_sweep(5, [3, 4, 5], 30)
    assert seq.limit == 4 - Fraction(1, 3) - Fraction(1, 4) - Fraction(1, 5)
    assert seq.strictly_increasing
    assert seq.gaps == tuple(Fraction(1, s) for s in range(2, 31))


def test_standard_sums():
    assert enumerate_standard_sums(2, 8) == [(2, 3, 6), (2, 4, 4), (3, 3, 3), (2, 2, 2, 2)]
    assert enumerate_standard_sums(1, 8) == [(2, 2)]
    assert enumerate_standard_sums(2, 3) == [(2, 3, 6), (2, 4, 4), (3, 3, 3)]


def test_cartier_multiples():
    ms, l, per = cartier_multiples_C2()
    assert ms == {1, 2, 3, 4, 6}
    assert l == 12
    assert per[(2, 3, 6)] == 6 and per[(2, 2, 2, 2)] == 2


def test_bounds():
    t = bounds_table()
    assert t["lower_bound_C2"].value == Fraction(1, 86436) == lower_bound(Fraction(1, 1764), 6)
    assert t["v1_C2"].value == Fraction(1, 42**2)
    assert t["record_C2"].value == Fraction(1, 42**2 * 43**2)
    assert t["upper_acc_C0_C1"].value == Fraction(1, 462)
    with pytest.raises(TypeError):
        t["new"] = None
    with pytest.raises(ValueError):
        lower_bound(0, 6)
