"""DCC coefficient sets of the shape  finite  U  {1 - 1/n : n >= 2}  U  {1}.

Besides membership this module computes accumulation points, a bounded
enumeration of the derivative set (coefficients produced by adjunction),
and the maxima t_m of the ACC sets

    T_m(C) = {(1 - b) / {m b} : b in C, {m b} != 0}  U  {1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from logsurf.rational import fmt, frac_part, parse_rational


@dataclass(frozen=True)
class CoeffSet:
    finite_part: tuple[Fraction, ...] = ()
    has_standard_family: bool = False
    has_one: bool = False

    def __post_init__(self):
        vals = tuple(sorted({Fraction(v) for v in self.finite_part}))
        if len(vals) != len(self.finite_part):
            raise ValueError("finite_part values must be distinct")
        for v in vals:
            if not 0 < v <= 1:
                raise ValueError(f"coefficient {fmt(v)} is outside (0, 1]")
        object.__setattr__(self, "finite_part", vals)

    @classmethod
    def finite(cls, values: Iterable) -> "CoeffSet":
        return cls(tuple(parse_rational(v) if isinstance(v, str) else Fraction(v) for v in values))

    def union(self, other: "CoeffSet") -> "CoeffSet":
        return CoeffSet(
            tuple(set(self.finite_part) | set(other.finite_part)),
            self.has_standard_family or other.has_standard_family,
            self.has_one or other.has_one,
        )

    def __contains__(self, q) -> bool:
        return contains(self, q)

    def is_empty(self) -> bool:
        return not (self.finite_part or self.has_standard_family or self.has_one)

    def members(self, max_n: int) -> list[Fraction]:
        """All members, with the standard family cut at denominators <= max_n."""
        out = set(self.finite_part)
        if self.has_standard_family:
            out.update(1 - Fraction(1, n) for n in range(2, max_n + 1))
        if self.has_one:
            out.add(Fraction(1))
        return sorted(out)

    def to_json(self) -> dict:
        return {
            "finite": [fmt(v) for v in self.finite_part],
            "standard_family": self.has_standard_family,
            "one": self.has_one,
        }

    @classmethod
    def from_json(cls, data) -> "CoeffSet":
        if isinstance(data, str):
            try:
                return PRESETS[data]
            except KeyError:
                raise ValueError(f"unknown coefficient set preset {data!r}") from None
        unknown = set(data) - {"finite", "standard_family", "one"}
        if unknown:
            raise ValueError(f"unknown coefficient set fields: {sorted(unknown)}")
        return cls(
            tuple(parse_rational(v) for v in data.get("finite", [])),
            bool(data.get("standard_family", False)),
            bool(data.get("one", False)),
        )


C0 = CoeffSet()
C1 = CoeffSet(has_one=True)
C2 = CoeffSet(has_standard_family=True, has_one=True)
PRESETS = {"C0": C0, "C1": C1, "C2": C2}


def is_standard(q: Fraction) -> bool:
    """q = 1 - 1/n for some integer n >= 1 (n = 1 gives the empty coefficient 0)."""
    q = Fraction(q)
    if not 0 <= q < 1:
        return False
    r = 1 / (1 - q)
    return r.denominator == 1


def contains(cset: CoeffSet, q) -> bool:
    q = Fraction(q)
    if q in cset.finite_part:
        return True
    if cset.has_one and q == 1:
        return True
    return cset.has_standard_family and is_standard(q)


def accumulation_points(cset: CoeffSet) -> CoeffSet:
    # the standard family accumulates only at 1; finite parts contribute nothing
    if cset.has_standard_family:
        return CoeffSet(has_one=True)
    return CoeffSet()


def _multiplicity_vectors(values: list[Fraction], max_terms: int) -> Iterator[Fraction]:
    """Yield every sum  n_1 b_1 + ... (n_j >= 0, sum n_j <= max_terms)  that is <= 1."""

    def rec(i: int, budget: int, acc: Fraction) -> Iterator[Fraction]:
        if i == len(values):
            yield acc
            return
        b = values[i]
        n = 0
        while n <= budget and acc + n * b <= 1:
            yield from rec(i + 1, budget - n, acc + n * b)
            n += 1

    yield from rec(0, max_terms, Fraction(0))


def derivative_members(
    cset: CoeffSet, max_m: int, max_terms: int, max_n: int | None = None
) -> list[Fraction]:
    """Bounded enumeration of the derivative set.

    Values ``1 - (1 - sum n_j b_j) / m`` with ``m <= max_m``,
    ``sum n_j <= max_terms`` and ``sum n_j b_j <= 1``, plus 1.  A single
    standard coefficient 1 - 1/n never violates ``sum <= 1``, so the standard
    family is cut at denominators ``n <= max_n`` (default ``max(max_m, 12)``).
    The result is complete relative to these three bounds.
    """
    if max_m < 1 or max_terms < 0:
        raise ValueError("need max_m >= 1 and max_terms >= 0")
    if max_n is None:
        max_n = max(max_m, 12)
    values = cset.members(max_n)
    sums = set(_multiplicity_vectors(values, max_terms))
    out = {Fraction(1)}
    for s, m in itertools.product(sums, range(1, max_m + 1)):
        out.add(1 - (1 - s) / m)
    return sorted(out)


def _tm_candidates(cset: CoeffSet, m: int) -> Iterator[Fraction]:
    yield from cset.finite_part
    if cset.has_standard_family:
        # for b = 1 - 1/n:  (1 - b)/{mb} = 1/(n - (m mod n)); for n > m + 1 this
        # is 1/(n - m) <= 1/2, so n <= m + 1 already realises the maximum
        yield from (1 - Fraction(1, n) for n in range(2, m + 2))
    if cset.has_one:
        yield Fraction(1)


def t_m(cset: CoeffSet, m: int) -> Fraction:
    """max T_m(C); always >= 1 because T_m contains 1."""
    if m < 1:
        raise ValueError("m must be >= 1")
    best = Fraction(1)
    for b in _tm_candidates(cset, m):
        fp = frac_part(m * b)
        if fp:
            best = max(best, (1 - b) / fp)
    return best


def t_m_lower_bound_check(cset: CoeffSet, m: int, b) -> bool:
    """b + t_m {mb} >= 1 for a member b (vacuous when {mb} = 0)."""
    b = Fraction(b)
    if not contains(cset, b):
        raise ValueError(f"{fmt(b)} is not in the coefficient set")
    fp = frac_part(m * b)
    if fp == 0:
        return True
    return b + t_m(cset, m) * fp >= 1
