"""Exit criteria, runnable from pytest and from ``logsurf verify``.

Closed forms and brute-force oracles live here and in the tests only; the
generators they check never consult them.  All comparisons are exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from logsurf.chains import (
    Chain,
    ChainBoundary,
    CorollaryNotApplicable,
    Hit,
    chain_index,
    different_coefficient,
    different_from_system,
    verify_standard_different,
)
from logsurf.coeffsets import C2, contains, derivative_members, t_m
from logsurf.constructions import (
    bounds_table,
    cartier_multiples_C2,
    enumerate_standard_sums,
    example_even,
    example_odd,
    iterated_sequence,
    lower_bound,
    nklt_blowup_sequence,
)
from logsurf.linalg import is_negative_definite
from logsurf.rational import fmt, frac_part
from logsurf.surfaces import LogPair, SurfaceConfig, lc_check, make_base, zariski


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.name}: {self.detail}"


class _Failures:
    def __init__(self):
        self.items: list[str] = []
        self.count = 0

    def check(self, ok: bool, msg: Callable[[], str] | str) -> None:
        self.count += 1
        if not ok and len(self.items) < 5:
            self.items.append(msg() if callable(msg) else msg)
        elif not ok:
            self.items.append("...")

    def result(self, number: int, name: str, summary: str) -> CheckResult:
        if self.items:
            return CheckResult(number, name, False, "; ".join(self.items[:6]))
        return CheckResult(number, name, True, f"{summary} ({self.count} exact checks)")


# -- random configurations ---------------------------------------------------

CATALOG = {
    "P2": [{"L": 1}, {"L": 2}],
    "P1xP1": [{"f1": 1}, {"f2": 1}, {"f1": 1, "f2": 1}],
    "F": [{"sigma": 1}, {"f": 1}, {"sigma": 1, "f": 1}],
}


def random_config(rng: random.Random, max_blowups: int = 8, max_curves: int = 5) -> SurfaceConfig:
    """A random catalog surface with rational catalog curves and a random blow-up script.

    Catalog curves are lines and conics on P^2, rulings and diagonals on
    P^1 x P^1, and the negative section, fibres and sections sigma + n f on
    F_n; all are smooth rational curves.
    """
    kind = rng.choice(["P2", "P1xP1", "F"])
    n = rng.randint(0, 3) if kind == "F" else 0
    b = make_base(kind, n).builder()
    choices = CATALOG[kind]
    if kind == "F":
        choices = [{"sigma": 1}, {"f": 1}, {"sigma": 1, "f": n}, {"sigma": 1, "f": n + 1}]
    names: list[str] = []
    for i in range(rng.randint(1, max_curves)):
        cls = rng.choice(choices)
        if kind == "F" and cls == {"sigma": 1} and "C_neg" not in names:
            nm = "C_neg"
        elif kind == "F" and cls == {"sigma": 1}:
            continue  # the negative section is unique when n > 0
        else:
            nm = f"C{i}"
        try:
            b.add_curve(nm, cls)
        except ValueError:
            continue
        names.append(nm)
    current = b.freeze()
    for k in range(rng.randint(0, max_blowups)):
        nm = f"X{k}"
        options: list = ["general"]
        curve_names = list(current.curve_names)
        for c in curve_names:
            options.append(("on", c))
        for a, c in itertools.combinations(curve_names, 2):
            if current.pair(current.curve(a).cls, current.curve(c).cls) > 0:
                options.append(("node", a, c))
        current = current.blow_up(rng.choice(options), nm)
    return current


# -- the criteria -------------------------------------------------------------

def criterion_1() -> CheckResult:
    f = _Failures()
    for n in range(3, 21):
        v = example_even(n)[1]
        f.check(v == 2 * (n - 2), lambda: f"even n={n}: {fmt(v)}")
    for n in range(2, 21):
        v = example_odd(n)[1]
        f.check(v == 2 * n - 3, lambda: f"odd n={n}: {fmt(v)}")
    return f.result(1, "basic examples have volumes 2(n-2), 2n-3", "n = 3..20 even, 2..20 odd")


def criterion_2() -> CheckResult:
    f = _Failures()
    pair, base = example_even(3)
    f.check(base == 2, f"base volume {fmt(base)}")
    values = []
    for s in range(1, 51):
        r = nklt_blowup_sequence(pair, "H1", "V1", s)
        values.append(r.value)
        f.check(r.value == 2 - Fraction(1, s), lambda: f"s={s}: (K+B')^2 = {fmt(r.value)}")
        names = r.diagnostics["exceptional"]
        dots = r.diagnostics["exceptional_pairings"]
        for i, nm in enumerate(names, start=1):
            want = Fraction(1, s) if i == s else Fraction(0)
            f.check(dots[nm] == want, lambda: f"s={s}: (K+B').E{i} = {fmt(dots[nm])}")
    f.check(all(a < b for a, b in zip(values, values[1:])), "sequence not strictly increasing")
    f.check(all(v < 2 for v in values), "an entry reaches the limit")
    f.check(all((2 - v) * s == 1 for s, v in enumerate(values, start=1)), "gap is not exactly 1/s")
    return f.result(2, "blow-up chain (K+B')^2 = 2 - 1/s", "s = 1..50")


def criterion_3() -> CheckResult:
    f = _Failures()
    cases = 0
    for n in range(4, 9):
        for s in itertools.product(range(2, 7), repeat=n - 1):
            inv = sum(Fraction(1, x) for x in s)
            closed = (n - 3) ** 2 - inv
            if closed <= 0:
                continue
            cases += 1
            r = iterated_sequence(n, s)
            lines = r.diagnostics["line_pairings"]
            ok = (
                r.value == closed
                and lines[f"L{n}"] == n - 3 - inv
                and all(lines[f"L{j}"] == n - 4 for j in range(1, n))
            )
            f.check(ok, lambda: f"n={n} s={s}: value {fmt(r.value)}, line pairings {lines}")
    return f.result(3, "iterated construction (n-3)^2 - sum 1/s_j", f"{cases} configurations, n = 4..8, s_j in 2..6")


def _tm_bruteforce_standard(m: int, n_max: int) -> Fraction:
    best = Fraction(1)
    for n in range(2, n_max + 1):
        b = 1 - Fraction(1, n)
        fp = frac_part(m * b)
        if fp:
            best = max(best, (1 - b) / fp)
    return best


def criterion_4() -> CheckResult:
    f = _Failures()
    for m in range(1, 201):
        v = t_m(C2, m)
        f.check(v == 1, lambda: f"t_{m} = {fmt(v)}")
    for m in range(1, 51):
        bf = _tm_bruteforce_standard(m, 10 * m)
        f.check(bf == t_m(C2, m), lambda: f"m={m}: brute force {fmt(bf)}")
    return f.result(4, "t_m(C2) = 1", "m = 1..200, brute force n <= 10m for m <= 50")


def standard_sums_bruteforce(target: int, n_max: int, k_max: int) -> set[tuple[int, ...]]:
    """All nondecreasing tuples with entries in 2..n_max, length <= k_max.

    Partial sums that already exceed the target are dropped, and the last
    entry is solved for instead of looped over; both are exact.
    """
    out = set()

    def rec(prefix: tuple[int, ...], total: Fraction, k_left: int) -> None:
        if total == target and prefix:
            out.add(prefix)
        if k_left == 0 or total + Fraction(1, 2) > target:
            return
        lo = prefix[-1] if prefix else 2
        need = target - total
        if k_left == 1 or need <= 1:
            # a single further term 1 - 1/n equals need iff n = 1/(1 - need)
            if 0 < need < 1:
                inv = 1 / (1 - need)
                if inv.denominator == 1 and lo <= inv.numerator <= n_max:
                    out.add(prefix + (inv.numerator,))
            if k_left == 1:
                return
        for n in range(lo, n_max + 1):
            rec(prefix + (n,), total + 1 - Fraction(1, n), k_left - 1)

    rec((), Fraction(0), k_max)
    return out


def criterion_5() -> CheckResult:
    f = _Failures()
    two = set(enumerate_standard_sums(2, 8))
    one = set(enumerate_standard_sums(1, 8))
    f.check(two == {(3, 3, 3), (2, 4, 4), (2, 3, 6), (2, 2, 2, 2)}, lambda: f"target 2: {sorted(two)}")
    f.check(one == {(2, 2)}, lambda: f"target 1: {sorted(one)}")
    f.check(standard_sums_bruteforce(2, 100, 8) == two, "brute force disagrees for target 2")
    f.check(standard_sums_bruteforce(1, 100, 8) == one, "brute force disagrees for target 1")
    ms, l, _ = cartier_multiples_C2()
    f.check(ms == {1, 2, 3, 4, 6}, lambda: f"multiples {sorted(ms)}")
    f.check(l == 12, lambda: f"lcm {l}")
    return f.result(5, "standard sums and Cartier multiples", "solutions, {1,2,3,4,6}, lcm 12")


def criterion_6() -> CheckResult:
    f = _Failures()
    table = bounds_table()
    lb = lower_bound(Fraction(1, 1764), 6, 1)
    f.check(lb == Fraction(1, 86436), lambda: f"lower bound {fmt(lb)}")
    f.check(lb == Fraction(1, 7**2 * 42**2), "1/(7^2 42^2)")
    f.check(table["lower_bound_C2"].value == lb, "table lower bound")
    f.check(table["v1_C2"].value == Fraction(1, 1764), "table v1")
    return f.result(6, "lower bound 1/86436 and v1 = 1/1764", "formula and table")


def random_chain_case(rng: random.Random) -> tuple[Chain, ChainBoundary]:
    r = rng.randint(1, 8)
    chain = Chain(tuple(rng.randint(2, 7) for _ in range(r)))
    hits = []
    for _ in range(rng.randint(0, 3)):
        n = rng.randint(2, 12)
        b = rng.choice([Fraction(1), 1 - Fraction(1, n)])
        hits.append(Hit(rng.randint(1, r), rng.randint(1, 2), b))
    return chain, ChainBoundary(tuple(hits))


def criterion_7(cases: int = 400, seed: int = 7) -> CheckResult:
    f = _Failures()
    rng = random.Random(seed)
    applicable = 0
    for _ in range(cases):
        chain, bd = random_chain_case(rng)
        det_route = different_coefficient(chain, bd, check=False)
        sys_route = different_from_system(chain, bd)
        f.check(det_route == sys_route, lambda: f"{chain.p} {bd}: {fmt(det_route)} vs {fmt(sys_route)}")
        # the transverse single hit on F_r, and the no-hit case
        for variant in (ChainBoundary(), ChainBoundary((Hit(len(chain), 1, 1 - Fraction(1, rng.randint(2, 9))),))):
            try:
                n, m, n_prime = verify_standard_different(chain, variant)
            except CorollaryNotApplicable as exc:
                f.check(False, f"{chain.p}: {exc}")
                continue
            applicable += 1
            f.check(n == m * n_prime and m == chain_index(chain), lambda: f"{chain.p}: n={n} m={m} n'={n_prime}")
    return f.result(7, "different: determinant formula = linear system", f"{cases} random chains, {applicable} corollary cases")


def criterion_8() -> CheckResult:
    f = _Failures()
    members = derivative_members(C2, 12, 6)
    for q in members:
        f.check(contains(C2, q), lambda: f"{fmt(q)} not standard")
    return f.result(8, "derivative set of C2 inside C2", f"{len(members)} members, max_m=12, max_terms=6")


def random_effective_divisor(rng: random.Random, config: SurfaceConfig) -> dict[str, Fraction]:
    names = list(config.curve_names)
    d = {nm: Fraction(rng.randint(0, 6), rng.randint(1, 4)) for nm in rng.sample(names, k=min(len(names), rng.randint(1, 5)))}
    # a pulled-back ample-ish class keeps some cases big
    gen = config.base.generators
    for g in gen:
        if rng.random() < 0.5:
            d[g] = Fraction(rng.randint(0, 3))
    return {k: v for k, v in d.items() if v}


def zariski_contract(config: SurfaceConfig, d: dict[str, Fraction]) -> list[str]:
    """Every violated clause of the decomposition contract."""
    z = zariski(config, d)
    bad = []
    dcls = config.qclass(d)
    recon = dict(z.positive)
    for nm, v in z.negative.items():
        for i, c in config.curve(nm).cls.items():
            recon[i] = recon.get(i, Fraction(0)) + v * c
    if {i: v for i, v in recon.items() if v} != dcls:
        bad.append("D != P + N")
    if any(v < 0 for v in z.negative.values()):
        bad.append("N not effective")
    for nm in z.negative:
        if config.pair(z.positive, config.curve(nm).cls) != 0:
            bad.append(f"P.{nm} != 0")
    for nm in config.curve_names:
        if config.pair(z.positive, config.curve(nm).cls) < 0:
            bad.append(f"P.{nm} < 0")
    if not is_negative_definite(config.curve_gram(list(z.negative))):
        bad.append("support not negative definite")
    if config.pair(z.positive, z.positive) < config.pair(dcls, dcls):
        bad.append("P^2 < D^2")
    if not (z.config_nef and z.support_negative_definite):
        bad.append("flags")
    return bad


def criterion_9(cases: int = 150, seed: int = 9) -> CheckResult:
    f = _Failures()
    rng = random.Random(seed)
    nonzero_n = 0
    for k in range(cases):
        config = random_config(rng)
        d = random_effective_divisor(rng, config)
        try:
            bad = zariski_contract(config, d)
        except ArithmeticError as exc:
            bad = [f"{type(exc).__name__}: {exc}"]
        if not bad and zariski(config, d).negative:
            nonzero_n += 1
        f.check(not bad, lambda: f"case {k}: {', '.join(bad)}")
    blp = make_base("P2").blow_up("general", "E")
    z = zariski(blp, {"L": 1, "E": 1})
    f.check(z.negative == {"E": 1}, lambda: f"Bl_p P^2: N = {z.negative}")
    f.check(z.positive == {0: 1}, lambda: f"Bl_p P^2: P = {z.positive}")
    f.check(blp.pair(z.positive, z.positive) == 1, "Bl_p P^2: P^2 != 1")
    return f.result(9, "Zariski contract", f"{cases} random configurations ({nonzero_n} with N != 0), Bl_p P^2 example")


def criterion_10(cases: int = 150, seed: int = 10) -> CheckResult:
    f = _Failures()
    rng = random.Random(seed)
    for k in range(cases):
        config = random_config(rng)
        nb = len(config.blowups)
        stage = rng.randint(0, nb)
        early = [c.name for c in config.curves if c.stage <= stage and _exists_at(config, c.name, stage)]
        d1 = {nm: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for nm in early}
        d2 = {nm: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for nm in early}
        before = _pair_at_stage(config, d1, d2, stage)
        p1, p2 = config.pullback(d1, stage), config.pullback(d2, stage)
        after = config.intersect(p1, p2)
        f.check(before == after, lambda: f"case {k}: projection formula {fmt(before)} vs {fmt(after)}")
        for bu in config.blowups[stage:]:
            f.check(config.intersect(p1, {bu.name: 1}) == 0, lambda: f"case {k}: pullback . {bu.name} != 0")
        for c in config.curves:
            g = config.arithmetic_genus(c.name)
            f.check(g == 0, lambda: f"case {k}: genus of {c.name} is {fmt(g)}")
        f.check(config.pair(config.canonical, config.canonical) == _base_k2(config) - nb, f"case {k}: K^2")
    verdicts = _lc_examples()
    f.check(verdicts == ["lc", "not_lc", "klt"], lambda: f"lc examples gave {verdicts}")
    return f.result(10, "projection formula, genus formula, lc examples", f"{cases} random scripts")


def _exists_at(config: SurfaceConfig, name: str, stage: int) -> bool:
    for k, bu in enumerate(config.blowups):
        if bu.name == name:
            return k < stage
    return True


def _pair_at_stage(config: SurfaceConfig, d1, d2, stage: int) -> Fraction:
    def cls(d):
        out: dict[int, Fraction] = {}
        for nm, v in d.items():
            for i, x in config.class_at_stage(nm, stage).items():
                out[i] = out.get(i, Fraction(0)) + v * x
        return out

    return Fraction(config.pair(cls(d1), cls(d2)))


def _base_k2(config: SurfaceConfig) -> int:
    k = {i: v for i, v in enumerate(config.base.canonical)}
    return config.pair(k, k)


def _lc_examples() -> list[str]:
    b = make_base("P2").builder()
    for j in range(1, 5):
        b.add_curve(f"L{j}", {"L": 1})
    four = b.freeze()
    return [
        lc_check(LogPair(four, {f"L{j}": 1 for j in range(1, 5)})).verdict,
        lc_check(LogPair(four, {"L1": Fraction(3, 2)})).verdict,
        lc_check(LogPair(four, {f"L{j}": Fraction(1, 2) for j in range(1, 5)})).verdict,
    ]


CRITERIA: list[Callable[[], CheckResult]] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_all(only: set[int] | None = None) -> list[CheckResult]:
    out = []
    for i, crit in enumerate(CRITERIA, start=1):
        if only and i not in only:
            continue
        try:
            out.append(crit())
        except Exception as exc:  # a crash is a failed criterion, reported like one
            out.append(CheckResult(i, crit.__name__, False, f"raised {type(exc).__name__}: {exc}"))
    return out
