"""Hirzebruch-Jung chains and the different.

A chain (p_1, ..., p_r) stands for curves F_1 - F_2 - ... - F_r with
F_i^2 = -p_i, p_i >= 2, resolving a cyclic quotient point Q on a curve E.
E meets F_1 once and no other F_i.  Boundary curves Delta_j with
coefficients b_j hit the chain at prescribed curves.

Two independent routes give the coefficient b' of Q in the different:

* the determinant formula  b' = 1 - (1 - sum_j n_j b_j) / m  with m the
  continuant of the chain and n_j = sum_i (Delta_j . F_i) det(p_{i+1..r});
* solving the adjunction linear system for the codiscrepancies of the F_i
  (b' is the codiscrepancy of F_1).

The empty chain models a smooth point of the surface (m = 1); its hits use
index 0 and carry the local intersection number (E . Delta_j)_Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from logsurf.coeffsets import is_standard
from logsurf.linalg import solve
from logsurf.rational import fmt, parse_rational


class NotLogCanonical(ArithmeticError):
    """Raised when a computed codiscrepancy exceeds 1."""

    def __init__(self, message: str, value: Fraction | None = None, witness=None):
        super().__init__(message)
        self.value = value
        self.witness = witness


class CorollaryNotApplicable(ValueError):
    pass


def continuant(p: Sequence[int]) -> int:
    """det of the tridiagonal matrix with p_i on the diagonal and -1 beside it."""
    for x in p:
        if x < 2:
            raise ValueError(f"chain entries must be >= 2, got {x}")
    # d_i = p_i d_{i+1} - d_{i+2}, run from the tail
    d_next, d = 0, 1
    for x in reversed(p):
        d_next, d = d, x * d - d_next
    return d


@dataclass(frozen=True)
class Chain:
    p: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        for x in self.p:
            if x < 2:
                raise ValueError(f"chain entries must be >= 2, got {x}")

    def __len__(self) -> int:
        return len(self.p)

    def matrix(self) -> list[list[int]]:
        """M = -(Gram matrix of the F_i)."""
        r = len(self.p)
        return [
            [self.p[i] if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)]
            for i in range(r)
        ]

    def gram(self) -> list[list[int]]:
        return [[-x for x in row] for row in self.matrix()]


@dataclass(frozen=True)
class Hit:
    index: int  # 1-based curve of the chain; 0 for the smooth-point model
    multiplicity: int
    coefficient: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.multiplicity < 1:
            raise ValueError("hit multiplicities must be positive")
        if not 0 < self.coefficient <= 1:
            raise ValueError(f"boundary coefficient {fmt(self.coefficient)} outside (0, 1]")


@dataclass(frozen=True)
class ChainBoundary:
    hits: tuple[Hit, ...] = ()

    @classmethod
    def of(cls, *hits: tuple) -> "ChainBoundary":
        return cls(tuple(Hit(i, mult, Fraction(b)) for i, mult, b in hits))

    def validate(self, chain: Chain) -> None:
        r = len(chain)
        for h in self.hits:
            if r == 0 and h.index != 0:
                raise ValueError("hits on the empty chain (smooth point) use index 0")
            if r > 0 and not 1 <= h.index <= r:
                raise ValueError(f"hit index {h.index} outside 1..{r}")

    def load(self, r: int) -> list[Fraction]:
        """Delta . F_k weighted by coefficients, per chain curve."""
        out = [Fraction(0)] * r
        for h in self.hits:
            out[h.index - 1] += h.multiplicity * h.coefficient
        return out


def chain_index(chain: Chain) -> int:
    if len(chain) == 0:
        raise ValueError("the index is defined for non-empty chains")
    return continuant(chain.p)


def hit_weights(chain: Chain, boundary: ChainBoundary) -> list[int]:
    """n_j for each hit (one entry per hit, in order)."""
    boundary.validate(chain)
    p = chain.p
    if not p:
        return [h.multiplicity for h in boundary.hits]
    return [h.multiplicity * continuant(p[h.index:]) for h in boundary.hits]


@dataclass(frozen=True)
class Different:
    m: int
    n: tuple[int, ...]
    b_prime: Fraction


def different(chain: Chain, boundary: ChainBoundary = ChainBoundary()) -> Different:
    """Determinant-formula evaluation, no lc check."""
    m = continuant(chain.p)
    n = hit_weights(chain, boundary)
    total = sum((nj * h.coefficient for nj, h in zip(n, boundary.hits)), Fraction(0))
    return Different(m, tuple(n), 1 - (1 - total) / m)


def different_coefficient(
    chain: Chain, boundary: ChainBoundary = ChainBoundary(), check: bool = True
) -> Fraction:
    b = different(chain, boundary).b_prime
    if check and b > 1:
        raise NotLogCanonical(f"different coefficient {fmt(b)} > 1", value=b)
    return b


def codiscrepancies(
    chain: Chain, boundary: ChainBoundary = ChainBoundary(), e_attach: bool = True
) -> list[Fraction]:
    """Codiscrepancies c_i of F_1..F_r for K + E + Delta, by solving M c = rhs.

    Intersecting g^*(K + E + Delta) with F_k gives
    (p_k - 2) + [E . F_k] + (Delta . F_k) = sum_i M_ki c_i.
    """
    r = len(chain)
    if r == 0:
        raise ValueError("empty chain has no exceptional curves")
    boundary.validate(chain)
    load = boundary.load(r)
    rhs = [Fraction(chain.p[k] - 2) + load[k] for k in range(r)]
    if e_attach:
        rhs[0] += 1
    return solve(chain.matrix(), rhs)


def log_discrepancies(
    chain: Chain, boundary: ChainBoundary = ChainBoundary(), e_attach: bool = True
) -> list[Fraction]:
    """Log discrepancies 1 - c_i, the unknowns of the adjunction system."""
    return [1 - c for c in codiscrepancies(chain, boundary, e_attach)]


def different_from_system(chain: Chain, boundary: ChainBoundary = ChainBoundary()) -> Fraction:
    """The different read off the linear system: codiscrepancy of F_1.

    For the smooth-point model the pull-back is trivial and the different is
    just sum_j (E . Delta_j)_Q b_j.
    """
    if len(chain) == 0:
        boundary.validate(chain)
        return sum((h.multiplicity * h.coefficient for h in boundary.hits), Fraction(0))
    return codiscrepancies(chain, boundary)[0]


def verify_standard_different(
    chain: Chain, boundary: ChainBoundary = ChainBoundary()
) -> tuple[int, int, int]:
    """Return (n, m, n') with b' = 1 - 1/n and n = m n' for standard coefficients.

    Applies when the boundary either hits only the last chain curve, once,
    or misses the chain entirely.
    """
    for h in boundary.hits:
        if not is_standard(h.coefficient):
            raise CorollaryNotApplicable(f"coefficient {fmt(h.coefficient)} is not 1 - 1/n < 1")
    d = different(chain, boundary)
    if d.b_prime >= 1:
        raise CorollaryNotApplicable(f"different coefficient {fmt(d.b_prime)} is not < 1")
    inv = 1 / (1 - d.b_prime)
    if inv.denominator != 1:
        raise CorollaryNotApplicable(f"different {fmt(d.b_prime)} is not standard")
    n = inv.numerator
    r = len(chain)
    hits = boundary.hits
    if not hits:
        n_prime = 1
        if d.m != n:
            raise AssertionError(f"index {d.m} != {n} with no boundary")
    elif len(hits) == 1 and hits[0].multiplicity == 1 and hits[0].index == r:
        n_prime = (1 / (1 - hits[0].coefficient)).numerator
    else:
        raise CorollaryNotApplicable("boundary meets the chain away from a single transverse hit on F_r")
    if n != d.m * n_prime:
        raise AssertionError(f"n = {n} but m n' = {d.m} * {n_prime}")
    return n, d.m, n_prime


def parse_hits(text: str | None) -> ChainBoundary:
    """Parse ``"i:mult:b,i:mult:b"`` (CLI syntax)."""
    if not text:
        return ChainBoundary()
    hits: list[Hit] = []
    for item in text.split(","):
        parts = item.strip().split(":")
        if len(parts) != 3:
            raise ValueError(f"hit {item!r} is not of the form i:mult:b")
        i, mult, b = parts
        hits.append(Hit(int(i), int(mult), parse_rational(b)))
    return ChainBoundary(tuple(hits))


def parse_chain(text: str | Iterable[int]) -> Chain:
    if isinstance(text, str):
        text = [int(x) for x in text.split(",") if x.strip()]
    return Chain(tuple(text))
