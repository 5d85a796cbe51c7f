"""Explicit log surfaces whose volumes realise accumulation points.

Every value returned here is computed through the intersection form of the
constructed configuration; no closed form is used on the production path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from logsurf.chains import NotLogCanonical
from logsurf.rational import fmt
from logsurf.surfaces.config import ConfigError, make_base
from logsurf.surfaces.pairs import LogPair, NotBig, lc_check, volume

Approach = Callable[[int], Fraction]


def standard_approach(s: int) -> Fraction:
    """1 - 1/s, the standard coefficients climbing to 1."""
    return 1 - Fraction(1, s)


class Construction(NamedTuple):
    pair: LogPair
    value: Fraction
    diagnostics: dict


@dataclass(frozen=True)
class VolumeSequence:
    parameters: dict
    entries: tuple[tuple[int, Fraction], ...]
    limit: Fraction

    @property
    def strictly_increasing(self) -> bool:
        vals = [v for _, v in self.entries]
        return all(a < b for a, b in zip(vals, vals[1:]))

    @property
    def gaps(self) -> tuple[Fraction, ...]:
        return tuple(self.limit - v for _, v in self.entries)


def example_even(n: int) -> tuple[LogPair, Fraction]:
    """P^1 x P^1 with three horizontal and n vertical lines, all of coefficient 1."""
    if n < 3:
        raise ValueError("need n >= 3 vertical lines")
    b = make_base("P1xP1").builder()
    for i in range(1, 4):
        b.add_curve(f"H{i}", {"f1": 1})
    for j in range(1, n + 1):
        b.add_curve(f"V{j}", {"f2": 1})
    config = b.freeze()
    pair = LogPair(config, {c: Fraction(1) for c in config.curve_names})
    return pair, volume(pair)[0]


def example_odd(n: int) -> tuple[LogPair, Fraction]:
    """F_1 with the (-1)-section, two sections of square 1 meeting once, and n fibres."""
    if n < 2:
        raise ValueError("need n >= 2 fibres")
    b = make_base("F", 1).builder()
    b.add_curve("G0", {"sigma": 1})
    b.add_curve("G1", {"sigma": 1, "f": 1}, meets={"G0": 0})
    b.add_curve("G2", {"sigma": 1, "f": 1}, meets={"G0": 0, "G1": 1})
    for j in range(1, n + 1):
        b.add_curve(f"F{j}", {"f": 1}, meets={"G0": 1, "G1": 1, "G2": 1})
    config = b.freeze()
    pair = LogPair(config, {c: Fraction(1) for c in config.curve_names})
    return pair, volume(pair)[0]


def perturb_coefficients(
    pair: LogPair,
    targets: Sequence[str],
    s: int,
    approach: Approach = standard_approach,
) -> tuple[LogPair, Fraction]:
    """Replace each targeted coefficient b by approach(s) < b and return the volume.

    ``approach`` must climb strictly towards the targeted coefficients (the
    default 1 - 1/s climbs to 1).
    """
    new = dict(pair.boundary)
    for name in targets:
        b = pair.coefficient(name)
        v = Fraction(approach(s))
        if not 0 < v < b:
            raise ValueError(f"approach value {fmt(v)} for {name!r} is not in (0, {fmt(b)})")
        new[name] = v
    perturbed = LogPair(pair.surface, new)
    vol, _ = volume(perturbed, require_big=True)
    return perturbed, vol


def _fresh(config_names: set[str], stem: str) -> str:
    name, k = stem, 0
    while name in config_names:
        k += 1
        name = f"{stem}_{k}"
    return name


def nklt_blowup_sequence(pair: LogPair, b1: str, b2: str, s: int, prefix: str = "E") -> Construction:
    """Blow up the node of b1 (coefficient 1) and b2 (coefficient b_2 > 0) s times.

    The first blow-up is at the node; each next one at the point where the
    newest exceptional curve meets the strict transform of b1, giving the
    chain  b1 - E_s - E_{s-1} - ... - E_1 - b2  with E_s^2 = -1 and
    E_i^2 = -2 otherwise.  E_i receives coefficient b_2 (s - i) / s.
    Returns (K + B')^2 on the blown-up surface.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    verdict = lc_check(pair)
    if not verdict.is_lc:
        raise NotLogCanonical(f"pair is not lc at {verdict.witness}", witness=verdict.witness)
    c1, c2 = pair.coefficient(b1), pair.coefficient(b2)
    if c1 != 1:
        raise ValueError(f"{b1!r} must have coefficient 1, has {fmt(c1)}")
    if c2 <= 0:
        raise ValueError(f"{b2!r} must have positive coefficient")
    config = pair.surface
    if config.pair(config.curve(b1).cls, config.curve(b2).cls) < 1:
        raise ConfigError(f"{b1!r} and {b2!r} do not meet")
    taken = set(config.curve_names) | set(config.class_names)
    names = []
    for i in range(1, s + 1):
        nm = _fresh(taken, f"{prefix}{i}")
        taken.add(nm)
        names.append(nm)
    b = config.builder()
    b.blow_up(("node", b1, b2), names[0])
    for i in range(1, s):
        b.blow_up(("node", names[i - 1], b1), names[i])
    new_config = b.freeze()
    boundary = dict(pair.boundary)
    for i, nm in enumerate(names, start=1):
        boundary[nm] = c2 * Fraction(s - i, s)
    new_pair = LogPair(new_config, boundary)
    value, dots = new_config.square_and_pairings(new_pair.log_canonical_divisor())
    diagnostics = {
        "exceptional": tuple(names),
        "exceptional_pairings": {nm: dots[nm] for nm in names},
        "self_intersections": {nm: new_config.self_intersection(nm) for nm in names},
        "pairings": dots,
        "config_nef": all(v >= 0 for v in dots.values()),
        "base_volume": volume(pair)[0],
    }
    return Construction(new_pair, value, diagnostics)


def nklt_volume_sequence(pair: LogPair, b1: str, b2: str, s_max: int) -> VolumeSequence:
    entries = tuple((s, nklt_blowup_sequence(pair, b1, b2, s).value) for s in range(1, s_max + 1))
    return VolumeSequence({"b1": b1, "b2": b2, "s_max": s_max}, entries, volume(pair)[0])


def lines_in_general_position(n: int):
    """P^2 with lines L1..Ln, pairwise meeting in distinct nodes."""
    b = make_base("P2").builder()
    for j in range(1, n + 1):
        b.add_curve(f"L{j}", {"L": 1})
    return b


def iterated_sequence(n: int, s: Sequence[int]) -> Construction:
    """Chains of s_j blow-ups at every node L_j . L_n of n general lines.

    The first blow-up of the j-th chain is at L_j . L_n and the following
    ones on the strict transform of L_j.  E_{j,i} gets coefficient
    (s_j - i)/s_j; all lines keep coefficient 1.
    """
    if n < 4:
        raise ValueError("need n >= 4 lines")
    s = [int(x) for x in s]
    if len(s) != n - 1:
        raise ValueError(f"need {n - 1} chain lengths, got {len(s)}")
    if any(x < 2 for x in s):
        raise ValueError("chain lengths must be >= 2")
    b = lines_in_general_position(n)
    last = f"L{n}"
    boundary: dict[str, Fraction] = {f"L{j}": Fraction(1) for j in range(1, n + 1)}
    chains: dict[int, list[str]] = {}
    for j, sj in enumerate(s, start=1):
        line = f"L{j}"
        names = [f"E{j}_{i}" for i in range(1, sj + 1)]
        b.blow_up(("node", line, last), names[0])
        for i in range(1, sj):
            b.blow_up(("node", names[i - 1], line), names[i])
        for i, nm in enumerate(names, start=1):
            if i < sj:
                boundary[nm] = Fraction(sj - i, sj)
        chains[j] = names
    config = b.freeze()
    pair = LogPair(config, boundary)
    value, dots = config.square_and_pairings(pair.log_canonical_divisor())
    diagnostics = {
        "line_pairings": {f"L{j}": dots[f"L{j}"] for j in range(1, n + 1)},
        "exceptional_pairings": {nm: dots[nm] for names in chains.values() for nm in names},
        "config_nef": all(v >= 0 for v in dots.values()),
        "s": tuple(s),
    }
    if value <= 0:
        raise NotBig(f"(K+B')^2 = {fmt(value)} is not positive", value)
    return Construction(pair, value, diagnostics)


def iterated_sweep(n: int, frozen: Sequence[int], s_max: int) -> VolumeSequence:
    """Send the first chain length to infinity with the others frozen.

    ``frozen`` holds s_2, ..., s_{n-1}; the limit is the value with the
    first chain removed, i.e. the pair where only the frozen chains exist,
    computed through the same intersection form.
    """
    frozen = list(frozen)
    entries = []
    for s1 in range(2, s_max + 1):
        entries.append((s1, iterated_sequence(n, [s1, *frozen]).value))
    # limit: same construction without the first chain (coefficients 1 on L_1)
    b = lines_in_general_position(n)
    last = f"L{n}"
    boundary = {f"L{j}": Fraction(1) for j in range(1, n + 1)}
    for j, sj in enumerate(frozen, start=2):
        names = [f"E{j}_{i}" for i in range(1, sj + 1)]
        b.blow_up(("node", f"L{j}", last), names[0])
        for i in range(1, sj):
            b.blow_up(("node", names[i - 1], f"L{j}"), names[i])
        for i, nm in enumerate(names[:-1], start=1):
            boundary[nm] = Fraction(sj - i, sj)
    config = b.freeze()
    kb = {"K": 1, **boundary}
    return VolumeSequence({"n": n, "frozen": tuple(frozen)}, tuple(entries), config.intersect(kb, kb))
