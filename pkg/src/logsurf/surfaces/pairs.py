"""Log pairs on configurations: lc test, accessible nklt curves, Zariski
decomposition relative to configuration curves, and the volume."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from logsurf.chains import NotLogCanonical
from logsurf.linalg import is_negative_definite, solve
from logsurf.rational import fmt
from logsurf.surfaces.config import SurfaceConfig

CONFIG_ASSUMPTION = (
    "nefness and the negative part are tested against tracked configuration "
    "curves only; the value is the volume provided every (K+B)-negative curve "
    "is tracked"
)


class NoZariskiDecomposition(ArithmeticError):
    """The configuration curves cannot carry a negative part for this class."""


class NotBig(ArithmeticError):
    def __init__(self, message: str, value: Fraction | None = None):
        super().__init__(message)
        self.value = value


@dataclass(frozen=True)
class LogPair:
    """A configuration with a boundary divisor.

    Coefficients are exact rationals.  Zeros are dropped.  Values outside
    (0, 1] are accepted so that non-lc data and sub-boundaries (log
    pull-backs with negative exceptional coefficients) can be examined;
    :func:`lc_check` judges them.
    """

    surface: SurfaceConfig
    boundary: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for name, v in self.boundary.items():
            self.surface.curve(name)
            v = Fraction(v)
            if v:
                clean[name] = v
        ordered = {n: clean[n] for n in self.surface.curve_names if n in clean}
        object.__setattr__(self, "boundary", ordered)

    def coefficient(self, name: str) -> Fraction:
        return self.boundary.get(name, Fraction(0))

    def log_canonical_divisor(self) -> dict[str, Fraction]:
        """K + B as a name -> coefficient map."""
        return {"K": Fraction(1), **self.boundary}

    def is_effective(self) -> bool:
        return all(v > 0 for v in self.boundary.values())


@dataclass(frozen=True)
class LcVerdict:
    verdict: str  # "klt" | "lc" | "not_lc"
    witness: str | None
    node_codiscrepancies: dict[tuple[str, str], Fraction]

    @property
    def is_lc(self) -> bool:
        return self.verdict != "not_lc"


def boundary_nodes(pair: LogPair) -> list[tuple[str, str, int]]:
    """Pairs of boundary curves that meet, with the number of nodes."""
    names = [n for n, v in pair.boundary.items() if v > 0]
    out = []
    s = pair.surface
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            k = s.pair(s.curve(a).cls, s.curve(b).cls)
            if k > 0:
                out.append((a, b, k))
    return out


def lc_check(pair: LogPair) -> LcVerdict:
    """Coefficient test for an snc pair.

    Also reports b_1 + b_2 - 1, the codiscrepancy of the blow-up of each
    node of the boundary; for snc data it can never exceed the larger of
    the two coefficients, so it is informational.
    """
    nodes = {(a, b): pair.boundary[a] + pair.boundary[b] - 1 for a, b, _ in boundary_nodes(pair)}
    worst = None
    for name, v in pair.boundary.items():
        if v > 1 and (worst is None or v > pair.boundary[worst]):
            worst = name
    if worst is not None:
        return LcVerdict("not_lc", worst, nodes)
    for (a, b), c in nodes.items():
        if c > 1:
            return LcVerdict("not_lc", f"{a}*{b}", nodes)
    ones = [n for n, v in pair.boundary.items() if v == 1]
    if ones:
        return LcVerdict("lc", ones[0], nodes)
    return LcVerdict("klt", None, nodes)


def find_accessible_nklt(pair: LogPair) -> list[tuple[str, str]]:
    """(coefficient-1 curve, positive boundary curve it meets) witnesses."""
    s = pair.surface
    out = []
    for a, v in pair.boundary.items():
        if v != 1:
            continue
        for b, w in pair.boundary.items():
            if b != a and w > 0 and s.pair(s.curve(a).cls, s.curve(b).cls) > 0:
                out.append((a, b))
    return out


@dataclass(frozen=True)
class ZariskiResult:
    divisor: dict[str, Fraction]
    positive: dict[int, Fraction]  # class vector
    negative: dict[str, Fraction]  # curve name -> coefficient
    config_nef: bool
    support_negative_definite: bool

    def positive_divisor(self) -> dict[str, Fraction]:
        out = dict(self.divisor)
        for n, v in self.negative.items():
            out[n] = out.get(n, Fraction(0)) - v
        return {k: v for k, v in out.items() if v}


def zariski(config: SurfaceConfig, divisor: Mapping[str, object]) -> ZariskiResult:
    """Zariski decomposition D = P + N with N supported on configuration curves.

    The support grows by every curve C with P.C < 0 until P is nef on all
    configuration curves; N solves P.C = 0 on the support exactly.
    """
    d = {k: Fraction(v) for k, v in divisor.items() if Fraction(v)}
    dcls = config.qclass(d)
    curves = {n: config.curve(n).cls for n in config.curve_names}
    d_dot = {n: config.pair(dcls, c) for n, c in curves.items()}
    support: list[str] = []
    neg: dict[str, Fraction] = {}
    pos = dict(dcls)
    p_dot = dict(d_dot)
    while True:
        bad = [n for n in config.curve_names if p_dot[n] < 0 and n not in support]
        if not bad:
            break
        support.extend(bad)
        gram = config.curve_gram(support)
        if not is_negative_definite(gram):
            raise NoZariskiDecomposition(
                "support {" + ", ".join(support) + "} is not negative definite"
            )
        x = solve(gram, [d_dot[n] for n in support])
        for n, v in zip(support, x):
            if v < 0:
                raise NoZariskiDecomposition(f"negative part has coefficient {fmt(v)} on {n!r}")
        neg = {n: v for n, v in zip(support, x) if v}
        pos = dict(dcls)
        for n, v in neg.items():
            for i, c in curves[n].items():
                pos[i] = pos.get(i, Fraction(0)) - v * c
        pos = {i: v for i, v in pos.items() if v}
        p_dot = {n: config.pair(pos, c) for n, c in curves.items()}
        for n in support:
            if p_dot[n] != 0:
                raise AssertionError(f"P.{n} = {fmt(p_dot[n])} after solving")
    nef = all(v >= 0 for v in p_dot.values())
    return ZariskiResult(d, pos, neg, nef, is_negative_definite(config.curve_gram(support)))


@dataclass(frozen=True)
class VolumeCertificate:
    config_nef_input: bool  # K + B itself was nef on the configuration
    contracted: dict[str, Fraction]  # negative part
    zero_curves: tuple[str, ...]  # curves with P.C = 0
    big: bool
    assumption: str = CONFIG_ASSUMPTION


def volume(pair: LogPair, require_big: bool = False) -> tuple[Fraction, VolumeCertificate]:
    """(P^2, certificate) where P is the positive part of K + B."""
    verdict = lc_check(pair)
    if not verdict.is_lc:
        raise NotLogCanonical(f"pair is not lc at {verdict.witness}", witness=verdict.witness)
    s = pair.surface
    z = zariski(s, pair.log_canonical_divisor())
    vol = s.pair(z.positive, z.positive)
    zero = tuple(n for n in s.curve_names if s.pair(z.positive, s.curve(n).cls) == 0)
    cert = VolumeCertificate(not z.negative, dict(z.negative), zero, vol > 0)
    if require_big and vol <= 0:
        raise NotBig(f"K+B is not big relative to the configuration (P^2 = {fmt(vol)})", vol)
    return Fraction(vol), cert
