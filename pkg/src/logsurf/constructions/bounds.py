"""Lower bounds for accumulation points of volumes with standard coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping


def lower_bound(v1, m: int, t=1) -> Fraction:
    """v1 / (1 + m t)^2."""
    v1, t = Fraction(v1), Fraction(t)
    if v1 <= 0:
        raise ValueError("v1 must be positive")
    if m < 1 or t < 1:
        raise ValueError("need m >= 1 and t >= 1")
    return v1 / (1 + m * t) ** 2


def enumerate_standard_sums(target: int, max_len: int) -> list[tuple[int, ...]]:
    """All n_1 <= ... <= n_k (n_j >= 2, k <= max_len) with sum (1 - 1/n_j) = target.

    Each term is >= 1/2, so k <= 2 target.  Writing the condition as
    sum 1/n_j = k - target =: R, a nondecreasing tuple needs
    1/n_1 >= R/k (so n_1 <= k/R) and 1/n_1 < R unless k = 1, which bounds
    every entry in turn.
    """
    if target not in (1, 2):
        raise ValueError("target must be 1 or 2")
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int, rest: Fraction) -> None:
        # need `remaining` more unit fractions 1/n (n >= prefix[-1]) summing to rest
        lo = prefix[-1] if prefix else 2
        if remaining == 0:
            if rest == 0:
                out.append(tuple(prefix))
            return
        if rest <= 0:
            return
        if remaining == 1:
            inv = 1 / rest
            if inv.denominator == 1 and inv.numerator >= lo:
                out.append((*prefix, inv.numerator))
            return
        hi = math.floor(remaining / rest)
        n = max(lo, math.floor(1 / rest) + 1)
        while n <= hi:
            rec([*prefix, n], remaining - 1, rest - Fraction(1, n))
            n += 1

    for k in range(1, min(max_len, 2 * target) + 1):
        rest = Fraction(k - target)
        if rest > 0:
            rec([], k, rest)
    return sorted(out, key=lambda t: (len(t), t))


def cartier_multiples_C2() -> tuple[set[int], int, dict[tuple[int, ...], int]]:
    """Per-solution lcm of the standard sums, plus 1 for the Cartier case.

    Returns (set of multiples, their lcm, lcm per solution tuple).
    """
    per = {t: math.lcm(*t) for t in enumerate_standard_sums(1, 4) + enumerate_standard_sums(2, 4)}
    ms = {1, *per.values()}
    return ms, math.lcm(*ms), per


@dataclass(frozen=True)
class BoundEntry:
    value: Fraction
    source: str


def _table() -> Mapping[str, BoundEntry]:
    v1 = Fraction(1, 1764)
    m_max = max(cartier_multiples_C2()[0])
    entries = {
        "v1_C2": BoundEntry(v1, "minimal volume with nonzero reduced boundary, standard coefficients (= 1/42^2)"),
        "lower_bound_C2": BoundEntry(lower_bound(v1, m_max, 1), "v1 / (1 + 6 t_6)^2 with t_m = 1 (= 1/(7^2 42^2))"),
        "upper_acc_C2": BoundEntry(Fraction(1, 1764), "accumulation point 1/42^2 for standard coefficients"),
        "upper_acc_C0_C1": BoundEntry(Fraction(1, 462), "accumulation point 1/(11 * 42) without boundary"),
        "elliptic_bound": BoundEntry(Fraction(1, 143), "volume bound with a simple elliptic singularity"),
        "delta1_C2": BoundEntry(Fraction(1, 42), "delta_1 for standard coefficients"),
        "record_C2": BoundEntry(Fraction(1, 3261636), "smallest known volume, standard coefficients (= 1/(42^2 43^2))"),
        "record_C0_C1": BoundEntry(Fraction(1, 48983), "smallest known volume without boundary"),
    }
    return MappingProxyType(entries)


BOUNDS = _table()


def bounds_table() -> Mapping[str, BoundEntry]:
    return BOUNDS
