"""Catalog surfaces, curve configurations and blow-up scripts.

Classes live in the basis  (base generators, e_1, ..., e_k)  where e_k is
the total transform of the k-th exceptional curve.  In that basis the
intersection form is the base Gram matrix plus -1 on every e_k, and a
blow-up at a point on curves C, C' just replaces their classes by C - e,
C' - e and adds the new curve e.  Pull-back of a class is the identity on
coordinates, which is why the projection formula holds by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from logsurf.rational import fmt

Vector = Mapping[int, int]  # sparse integral class
QVector = Mapping[int, Fraction]


class ConfigError(ValueError):
    """Malformed configuration data or an impossible blow-up request."""


@dataclass(frozen=True)
class BaseSurface:
    kind: str
    n: int
    generators: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]

    @property
    def label(self) -> str:
        return f"F{self.n}" if self.kind == "F" else self.kind


_KIND_ALIASES = {
    "P2": "P2",
    "ProjectivePlane": "P2",
    "P1xP1": "P1xP1",
    "QuadricP1xP1": "P1xP1",
    "F": "F",
    "Hirzebruch": "F",
}


def base_surface(kind: str, n: int = 0) -> BaseSurface:
    try:
        k = _KIND_ALIASES[kind]
    except KeyError:
        raise ConfigError(f"unknown base surface kind {kind!r}") from None
    if k == "P2":
        return BaseSurface("P2", 0, ("L",), ((1,),), (-3,))
    if k == "P1xP1":
        return BaseSurface("P1xP1", 0, ("f1", "f2"), ((0, 1), (1, 0)), (-2, -2))
    if n < 0:
        raise ConfigError("Hirzebruch surfaces need n >= 0")
    return BaseSurface("F", n, ("sigma", "f"), ((-n, 1), (1, 0)), (-2, -(n + 2)))


@dataclass(frozen=True)
class Curve:
    name: str
    cls: Mapping[int, int]
    stage: int  # number of blow-ups performed before the curve was declared
    exceptional: bool = False


@dataclass(frozen=True)
class BlowUp:
    name: str
    at: str  # "node" | "on" | "general"
    through: tuple[str, ...]  # curves passing through the centre


@dataclass(frozen=True)
class SurfaceConfig:
    base: BaseSurface
    curves: tuple[Curve, ...] = ()
    blowups: tuple[BlowUp, ...] = ()

    # -- bookkeeping -----------------------------------------------------
    @cached_property
    def _by_name(self) -> dict[str, Curve]:
        return {c.name: c for c in self.curves}

    @cached_property
    def class_names(self) -> tuple[str, ...]:
        return self.base.generators + tuple(b.name for b in self.blowups)

    @cached_property
    def _class_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.class_names)}

    @property
    def rank(self) -> int:
        return len(self.base.generators) + len(self.blowups)

    @property
    def curve_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.curves)

    def curve(self, name: str) -> Curve:
        try:
            return self._by_name[name]
        except KeyError:
            raise ConfigError(f"unknown curve {name!r}") from None

    def has_curve(self, name: str) -> bool:
        return name in self._by_name

    @cached_property
    def canonical(self) -> dict[int, int]:
        k = {i: v for i, v in enumerate(self.base.canonical) if v}
        g = len(self.base.generators)
        for j in range(len(self.blowups)):
            k[g + j] = 1
        return k

    # -- the intersection form ------------------------------------------
    def pair(self, a: Mapping[int, object], b: Mapping[int, object]):
        """Bilinear form on sparse class vectors (ints or Fractions)."""
        return _pair(self.base.gram, len(self.base.generators), a, b)

    def gram_matrix(self) -> list[list[int]]:
        r = self.rank
        basis = [{i: 1} for i in range(r)]
        return [[self.pair(u, v) for v in basis] for u in basis]

    def curve_gram(self, names: Iterable[str] | None = None) -> list[list[int]]:
        names = list(self.curve_names if names is None else names)
        cls = [self.curve(n).cls for n in names]
        return [[self.pair(u, v) for v in cls] for u in cls]

    def self_intersection(self, name: str) -> int:
        c = self.curve(name).cls
        return self.pair(c, c)

    def arithmetic_genus(self, name: str) -> Fraction:
        c = self.curve(name).cls
        return Fraction(self.pair(c, c) + self.pair(self.canonical, c), 2) + 1

    # -- classes from names ---------------------------------------------
    def class_of(self, divisor: Mapping[str, object]) -> tuple[dict[int, int], int]:
        """Integral class of ``den * divisor`` together with ``den``.

        Keys may be curve names, generator or exceptional class names, or
        ``"K"`` for the canonical class.  Curve names take precedence.
        Scaling to a common denominator keeps the inner loops on ints.
        """
        coeffs = {k: v if isinstance(v, Fraction) else Fraction(v) for k, v in divisor.items()}
        den = 1
        for v in coeffs.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        out: dict[int, int] = {}
        get = out.get
        for key, v in coeffs.items():
            if not v:
                continue
            c = v.numerator * (den // v.denominator)
            for i, x in self._named_class(key).items():
                out[i] = get(i, 0) + c * x
        return {i: x for i, x in out.items() if x}, den

    def _named_class(self, key: str) -> Mapping[int, int]:
        if key == "K":
            return self.canonical
        cur = self._by_name.get(key)
        if cur is not None:
            return cur.cls
        idx = self._class_index.get(key)
        if idx is not None:
            return {idx: 1}
        raise ConfigError(f"unknown curve or class {key!r}")

    def qclass(self, divisor: Mapping[str, object]) -> dict[int, Fraction]:
        cls, den = self.class_of(divisor)
        return {i: Fraction(x, den) for i, x in cls.items()}

    def intersect(self, d1: Mapping[str, object], d2: Mapping[str, object]) -> Fraction:
        c1, den1 = self.class_of(d1)
        c2, den2 = self.class_of(d2)
        return Fraction(self.pair(c1, c2), den1 * den2)

    def pairings(self, divisor: Mapping[str, object], names: Iterable[str] | None = None) -> dict[str, Fraction]:
        """D . C for every configuration curve C (or the given ones)."""
        cls, den = self.class_of(divisor)
        return self.class_pairings(cls, den, names)

    def class_pairings(self, cls: Mapping[int, int], den: int = 1, names: Iterable[str] | None = None) -> dict[str, Fraction]:
        curves = self.curves if names is None else [self.curve(n) for n in names]
        return {c.name: Fraction(self.pair(cls, c.cls), den) for c in curves}

    def square_and_pairings(self, divisor: Mapping[str, object]) -> tuple[Fraction, dict[str, Fraction]]:
        """(D^2, {C: D.C}) from a single class evaluation."""
        cls, den = self.class_of(divisor)
        return Fraction(self.pair(cls, cls), den * den), self.class_pairings(cls, den)

    def class_to_names(self, cls: Mapping[int, object]) -> dict[str, Fraction]:
        names = self.class_names
        return {names[i]: Fraction(v) for i, v in sorted(cls.items()) if v}

    # -- history ----------------------------------------------------------
    def class_at_stage(self, name: str, stage: int) -> dict[int, int]:
        """Class of curve ``name`` right after ``stage`` blow-ups (total transform)."""
        c = self.curve(name)
        if stage < c.stage:
            raise ConfigError(f"curve {name!r} does not exist at stage {stage}")
        out = dict(c.cls)
        g = len(self.base.generators)
        for k in range(stage, len(self.blowups)):
            if name in self.blowups[k].through:
                out[g + k] = out.get(g + k, 0) + 1
        return {i: x for i, x in out.items() if x}

    def pullback(self, divisor: Mapping[str, object], stage: int, log: bool = False) -> dict[str, Fraction]:
        """Total transform of a stage-``stage`` divisor, written on current curves.

        Each later blow-up gives its exceptional curve the sum of the running
        coefficients through the centre.  With ``log=True`` the divisor is a
        boundary B and the result is B_Y with K_Y + B_Y = f^*(K + B); the
        exceptional coefficient then drops by one (K_Y = f^*K + E).
        """
        if not 0 <= stage <= len(self.blowups):
            raise ConfigError(f"stage {stage} outside 0..{len(self.blowups)}")
        out: dict[str, Fraction] = {}
        for key, v in divisor.items():
            c = self.curve(key)
            if c.stage > stage:
                raise ConfigError(f"curve {key!r} is declared after stage {stage}")
            if c.exceptional and self._exceptional_stage(key) >= stage:
                raise ConfigError(f"exceptional curve {key!r} is created after stage {stage}")
            out[key] = Fraction(v)
        for k in range(stage, len(self.blowups)):
            bu = self.blowups[k]
            e = sum((out.get(n, Fraction(0)) for n in bu.through), Fraction(0))
            if log:
                e -= 1
            out[bu.name] = e
        return {k: v for k, v in out.items() if v}

    def _exceptional_stage(self, name: str) -> int:
        for k, bu in enumerate(self.blowups):
            if bu.name == name:
                return k
        raise ConfigError(f"{name!r} is not exceptional")

    # -- construction -----------------------------------------------------
    def builder(self) -> "ConfigBuilder":
        return ConfigBuilder(self)

    def add_curve(self, name: str, cls: Mapping[str, int], meets: Mapping[str, int] | None = None) -> "SurfaceConfig":
        return self.builder().add_curve(name, cls, meets).freeze()

    def blow_up(self, at, name: str) -> "SurfaceConfig":
        return self.builder().blow_up(at, name).freeze()


class ConfigBuilder:
    """Mutable, sequential construction of a :class:`SurfaceConfig`.

    Each blow-up touches only the curves through its centre, which keeps long
    scripts linear in their length.
    """

    def __init__(self, config: SurfaceConfig):
        self.base = config.base
        self._curves: dict[str, Curve] = {c.name: c for c in config.curves}
        self._classes: dict[str, dict[int, int]] = {c.name: dict(c.cls) for c in config.curves}
        self._blowups: list[BlowUp] = list(config.blowups)
        self._gram = config.base.gram
        self._g = len(config.base.generators)
        self._index = {name: i for i, name in enumerate(config.class_names)}

    def _pair(self, a: Mapping[int, int], b: Mapping[int, int]) -> int:
        return _pair(self._gram, self._g, a, b)

    def _parse_class(self, cls: Mapping[str, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for key, v in cls.items():
            if key not in self._index:
                raise ConfigError(f"unknown class name {key!r}")
            if isinstance(v, bool) or not isinstance(v, int):
                try:
                    v = int(str(v))
                except ValueError:
                    raise ConfigError(f"class coefficient for {key!r} must be an integer") from None
            if v:
                out[self._index[key]] = v
        return out

    def add_curve(self, name: str, cls: Mapping[str, int], meets: Mapping[str, int] | None = None) -> "ConfigBuilder":
        if name in self._curves or name in self._index or name == "K":
            raise ConfigError(f"duplicate name {name!r}")
        vec = self._parse_class(cls)
        if not vec:
            raise ConfigError(f"curve {name!r} has the zero class")
        for other, ocls in self._classes.items():
            if self._pair(vec, ocls) < 0:
                raise ConfigError(f"curve {name!r} would meet {other!r} negatively")
        for other, mult in (meets or {}).items():
            if other not in self._classes:
                raise ConfigError(f"declared incidence with unknown curve {other!r}")
            got = self._pair(vec, self._classes[other])
            if got != int(mult):
                raise ConfigError(f"{name!r}.{other!r} = {got} contradicts declared {mult}")
        self._curves[name] = Curve(name, vec, len(self._blowups))
        self._classes[name] = vec
        return self

    def blow_up(self, at, name: str) -> "ConfigBuilder":
        """Blow up a node of two curves, a point on one curve, or a general point.

        ``at`` is ``("node", A, B)``, ``("on", A)`` or ``"general"`` (the JSON
        forms ``{"node": [A, B]}`` and ``{"on": A}`` are accepted too).
        """
        kind, through = _parse_point(at)
        if name in self._curves or name in self._index or name == "K":
            raise ConfigError(f"duplicate name {name!r}")
        for c in through:
            if c not in self._classes:
                raise ConfigError(f"unknown curve {c!r} in blow-up centre")
        if kind == "node":
            a, b = through
            if a == b:
                raise ConfigError("a node needs two distinct curves")
            if self._pair(self._classes[a], self._classes[b]) < 1:
                raise ConfigError(f"curves {a!r} and {b!r} have no intersection point left")
        idx = self._g + len(self._blowups)
        for c in through:
            self._classes[c][idx] = -1
        self._index[name] = idx
        self._blowups.append(BlowUp(name, kind, through))
        vec = {idx: 1}
        self._classes[name] = vec
        self._curves[name] = Curve(name, vec, len(self._blowups), exceptional=True)
        return self

    def freeze(self) -> SurfaceConfig:
        curves = tuple(Curve(c.name, dict(self._classes[c.name]), c.stage, c.exceptional) for c in self._curves.values())
        return SurfaceConfig(self.base, curves, tuple(self._blowups))


def _pair(gram, g: int, a, b):
    if len(a) > len(b):
        a, b = b, a
    bget = b.get
    total = 0
    for i, x in a.items():
        if i >= g:
            y = bget(i)
            if y:
                total -= x * y
        else:
            row = gram[i]
            for j in range(g):
                if row[j]:
                    y = bget(j)
                    if y:
                        total += x * y * row[j]
    return total


def _parse_point(at) -> tuple[str, tuple[str, ...]]:
    if type(at) is tuple and len(at) == 3 and at[0] == "node":
        return "node", (at[1], at[2])
    if at == "general" or at == ("general",):
        return "general", ()
    if isinstance(at, Mapping):
        if set(at) == {"node"} and len(at["node"]) == 2:
            return "node", (str(at["node"][0]), str(at["node"][1]))
        if set(at) == {"on"}:
            return "on", (str(at["on"]),)
        raise ConfigError(f"bad blow-up point {at!r}")
    if isinstance(at, (tuple, list)):
        if len(at) == 3 and at[0] == "node":
            return "node", (at[1], at[2])
        if len(at) == 2 and at[0] == "on":
            return "on", (at[1],)
    raise ConfigError(f"bad blow-up point {at!r}")


def make_base(kind: str, n: int = 0) -> SurfaceConfig:
    return SurfaceConfig(base_surface(kind, n))


def canonical_square(config: SurfaceConfig) -> int:
    k = config.canonical
    return config.pair(k, k)


def describe_class(config: SurfaceConfig, cls: Mapping[int, object]) -> dict[str, str]:
    return {k: fmt(v) for k, v in config.class_to_names(cls).items()}
