"""Command-line front end.

Every subcommand prints one JSON report on standard output.  Exit codes:
0 on success, 1 on a mathematical signal (not lc, not big, no Zariski
decomposition over the configuration, a failed ``verify``), 2 on malformed
input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from logsurf.chains import (
    CorollaryNotApplicable,
    NotLogCanonical,
    codiscrepancies,
    different,
    different_coefficient,
    parse_chain,
    parse_hits,
    verify_standard_different,
)
from logsurf.coeffsets import CoeffSet, t_m
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
from logsurf.rational import decimal_str, fmt, parse_rational
from logsurf.surfaces import (
    LogPair,
    NoZariskiDecomposition,
    NotBig,
    SceneError,
    dump_scene,
    lc_check,
    load_scene,
    volume,
    zariski,
)
from logsurf.surfaces.config import ConfigError, describe_class


class Malformed(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class Signal(Exception):
    """A mathematical outcome that should end the run with exit code 1."""

    def __init__(self, report: dict):
        super().__init__(report.get("signal", {}).get("message", "signal"))
        self.report = report


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else "*".join(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


class Context:
    """Collects hashed inputs while a subcommand runs."""

    def __init__(self, argv: Sequence[str]):
        self.argv = list(argv)
        self.files: dict[str, str] = {}

    def read_json(self, path: str) -> dict:
        try:
            raw = Path(path).read_bytes()
        except OSError as exc:
            raise Malformed("scene", str(exc)) from None
        self.files[path] = hashlib.sha256(raw).hexdigest()
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise Malformed("scene", f"invalid JSON: {exc}") from None

    def scene(self, path: str) -> LogPair:
        return load_scene(self.read_json(path))

    def digest(self) -> str:
        payload = json.dumps({"argv": self.argv, "files": self.files}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()


def _rational(field: str, text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise Malformed(field, str(exc)) from None


def _int_list(field: str, text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise Malformed(field, f"expected comma-separated integers, got {text!r}") from None


def parse_divisor(text: str, pair: LogPair) -> dict[str, Fraction]:
    """``"K+B"``, ``"K,B"``, ``"L1:1/2,E1"``: terms ``name[:coef]``, B is the boundary."""
    out: dict[str, Fraction] = {}
    for term in text.replace("+", ",").split(","):
        term = term.strip()
        if not term:
            continue
        name, _, coef = term.partition(":")
        c = _rational("divisor", coef) if coef else Fraction(1)
        items = pair.boundary.items() if name == "B" else [(name, Fraction(1))]
        for k, v in items:
            out[k] = out.get(k, Fraction(0)) + c * v
    if not out:
        raise Malformed("divisor", "empty divisor")
    return out


# -- subcommands ----------------------------------------------------------------

def cmd_volume(args, ctx: Context) -> dict:
    pair = ctx.scene(args.scene)
    vol, cert = volume(pair)
    return {
        "outputs": {"volume": vol, "lc": lc_check(pair).verdict},
        "certificates": {
            "config_nef_input": cert.config_nef_input,
            "negative_part": cert.contracted,
            "zero_curves": list(cert.zero_curves),
            "big": cert.big,
            "assumption": cert.assumption,
        },
        "checks": {"volume_nonnegative": vol >= 0},
    }


def cmd_zariski(args, ctx: Context) -> dict:
    pair = ctx.scene(args.scene)
    d = parse_divisor(args.divisor, pair)
    try:
        z = zariski(pair.surface, d)
    except ConfigError as exc:
        raise Malformed("divisor", str(exc)) from None
    s = pair.surface
    p_sq = s.pair(z.positive, z.positive)
    dcls = s.qclass(d)
    return {
        "outputs": {
            "divisor": d,
            "positive_class": describe_class(s, z.positive),
            "negative": z.negative,
            "P^2": Fraction(p_sq),
            "D^2": Fraction(s.pair(dcls, dcls)),
        },
        "certificates": {"positive_pairings": s.class_pairings(z.positive)},
        "checks": {
            "config_nef": z.config_nef,
            "support_negative_definite": z.support_negative_definite,
        },
    }


def cmd_lc_check(args, ctx: Context) -> dict:
    pair = ctx.scene(args.scene)
    v = lc_check(pair)
    report = {
        "outputs": {"verdict": v.verdict, "witness": v.witness},
        "certificates": {"node_codiscrepancies": v.node_codiscrepancies},
        "checks": {"lc": v.is_lc},
    }
    if not v.is_lc:
        report["signal"] = {"kind": "not_lc", "message": f"not lc at {v.witness}"}
        raise Signal(report)
    return report


def cmd_different(args, ctx: Context) -> dict:
    try:
        chain = parse_chain(args.chain)
        bd = parse_hits(args.hits)
        bd.validate(chain)
    except (ValueError, TypeError) as exc:
        raise Malformed("chain/hits", str(exc)) from None
    d = different(chain, bd)
    different_coefficient(chain, bd)  # raises NotLogCanonical when b' > 1
    out: dict[str, Any] = {"m": d.m, "n_j": list(d.n), "b_prime": d.b_prime}
    checks: dict[str, bool] = {}
    if len(chain):
        c = codiscrepancies(chain, bd)
        out["codiscrepancies"] = c
        out["discrepancies"] = [1 - x for x in c]
        checks["linear_system_agrees"] = c[0] == d.b_prime
        checks["log_discrepancies_in_0_1"] = all(0 <= 1 - x <= 1 for x in c)
    certs: dict[str, Any] = {}
    try:
        n, m, n_prime = verify_standard_different(chain, bd)
        certs["standard"] = {"n": n, "m": m, "n_prime": n_prime}
        checks["n_equals_m_n_prime"] = n == m * n_prime
    except CorollaryNotApplicable as exc:
        certs["standard"] = f"not applicable: {exc}"
    return {"outputs": out, "certificates": certs, "checks": checks}


def _coeff_set(text: str) -> CoeffSet:
    try:
        data = text if not text.lstrip().startswith("{") else json.loads(text)
        return CoeffSet.from_json(data)
    except (ValueError, TypeError) as exc:
        raise Malformed("set", str(exc)) from None


def cmd_tm(args, ctx: Context) -> dict:
    cset = _coeff_set(args.set)
    if args.m < 1:
        raise Malformed("m", "m must be >= 1")
    return {"outputs": {"set": cset.to_json(), "m": args.m, "t_m": t_m(cset, args.m)}, "certificates": {}, "checks": {}}


def cmd_sums(args, ctx: Context) -> dict:
    if args.target not in (1, 2):
        raise Malformed("target", "target must be 1 or 2")
    sols = enumerate_standard_sums(args.target, args.max_len)
    ms, l, per = cartier_multiples_C2()
    return {
        "outputs": {"target": args.target, "solutions": [list(t) for t in sols]},
        "certificates": {
            "lcm_per_solution": {",".join(map(str, t)): v for t, v in sorted(per.items())},
            "cartier_multiples": sorted(ms),
            "lcm": l,
        },
        "checks": {},
    }


def cmd_bounds(args, ctx: Context) -> dict:
    table = bounds_table()
    lb = lower_bound(table["v1_C2"].value, max(cartier_multiples_C2()[0]), 1)
    return {
        "outputs": {k: {"value": e.value, "source": e.source} for k, e in table.items()},
        "certificates": {"lower_bound_formula": "v1 / (1 + m t_m)^2, m = 6, t_6 = 1"},
        "checks": {"lower_bound_recomputed": lb == table["lower_bound_C2"].value},
    }


def _write_csv(path: str, rows: list[tuple[int, Fraction]]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["s", "volume", "decimal"])
        for s, v in rows:
            w.writerow([s, fmt(v), decimal_str(v)])


def _emit(args, pair: LogPair, report: dict) -> None:
    if args.emit_scene:
        Path(args.emit_scene).write_text(json.dumps(dump_scene(pair), indent=2) + "\n")
        report["outputs"]["scene"] = args.emit_scene


def cmd_construct(args, ctx: Context) -> dict:
    kind = args.kind
    rows: list[tuple[int, Fraction]] = []
    if kind in ("even", "odd"):
        if args.n is None:
            raise Malformed("n", "--n is required")
        fn, lo = (example_even, 3) if kind == "even" else (example_odd, 2)
        if args.n < lo:
            raise Malformed("n", f"need n >= {lo}")
        pair, vol = fn(args.n)
        report = {"outputs": {"example": kind, "n": args.n, "volume": vol}, "certificates": {}, "checks": {}}
        if args.csv:
            rows = [(k, fn(k)[1]) for k in range(lo, args.n + 1)]
    elif kind == "nklt":
        if not (args.scene and args.b1 and args.b2 and args.s):
            raise Malformed("nklt", "needs a scene and --b1, --b2, --s")
        base = ctx.scene(args.scene)
        s = _single_int("s", args.s)
        if s < 1:
            raise Malformed("s", "s must be >= 1")
        for fld, name in (("b1", args.b1), ("b2", args.b2)):
            if not base.surface.has_curve(name):
                raise Malformed(fld, f"unknown curve {name!r}")
        try:
            r = nklt_blowup_sequence(base, args.b1, args.b2, s)
        except (ConfigError, ValueError) as exc:
            raise Malformed("nklt", str(exc)) from None
        pair = r.pair
        d = r.diagnostics
        report = {
            "outputs": {"s": s, "value": r.value, "base_volume": d["base_volume"]},
            "certificates": {
                "exceptional_pairings": d["exceptional_pairings"],
                "self_intersections": d["self_intersections"],
                "pairings": d["pairings"],
            },
            "checks": {"config_nef": d["config_nef"], "below_base_volume": r.value < d["base_volume"]},
        }
        if args.csv:
            rows = [(k, nklt_blowup_sequence(base, args.b1, args.b2, k).value) for k in range(1, s + 1)]
    elif kind == "iterated":
        if args.n is None or not args.s:
            raise Malformed("iterated", "needs --n and --s")
        s_list = _int_list("s", args.s)
        try:
            r = iterated_sequence(args.n, s_list)
        except ValueError as exc:
            raise Malformed("s", str(exc)) from None
        pair = r.pair
        report = {
            "outputs": {"n": args.n, "s": s_list, "value": r.value},
            "certificates": {
                "line_pairings": r.diagnostics["line_pairings"],
                "exceptional_pairings": r.diagnostics["exceptional_pairings"],
            },
            "checks": {"config_nef": r.diagnostics["config_nef"]},
        }
        if args.csv:
            rows = [(k, iterated_sequence(args.n, [k, *s_list[1:]]).value) for k in range(2, s_list[0] + 1)]
    else:  # argparse restricts the choices
        raise Malformed("construct", f"unknown construction {kind!r}")
    if args.csv:
        _write_csv(args.csv, rows)
        report["outputs"]["csv"] = args.csv
    _emit(args, pair, report)
    return report


def _single_int(field: str, text: str) -> int:
    vals = _int_list(field, text)
    if len(vals) != 1:
        raise Malformed(field, "expected one integer")
    return vals[0]


def cmd_verify(args, ctx: Context) -> dict:
    from logsurf.acceptance import run_all

    only = set(_int_list("only", args.only)) if args.only else None
    results = run_all(only)
    report = {
        "outputs": {f"criterion_{r.number}": r.line() for r in results},
        "certificates": {},
        "checks": {f"criterion_{r.number}": r.passed for r in results},
    }
    if not all(r.passed for r in results):
        report["signal"] = {"kind": "verify_failed", "message": "some criteria failed"}
        raise Signal(report)
    return report


# -- driver -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="logsurf", description="Exact volumes of log surfaces.")
    p.add_argument("--timing", action="store_true", help="append wall time to the report")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("volume", cmd_volume, "volume of K + B on a scene"),
        ("lc-check", cmd_lc_check, "klt / lc / not_lc verdict"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("scene")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("zariski", help="Zariski decomposition of a divisor")
    sp.add_argument("scene")
    sp.add_argument("--divisor", default="K+B", help='terms name[:coef], "K" and "B" allowed')
    sp.set_defaults(func=cmd_zariski)

    sp = sub.add_parser("different", help="different of a boundary along a chain singularity")
    sp.add_argument("--chain", required=True, help="p_1,...,p_r (empty for a smooth point)")
    sp.add_argument("--hits", default="", help="i:mult:b,...")
    sp.set_defaults(func=cmd_different)

    sp = sub.add_parser("tm", help="t_m of a coefficient set")
    sp.add_argument("--set", default="C2", help="C0, C1, C2 or a JSON object")
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_tm)

    sp = sub.add_parser("sums", help="standard solutions of sum (1 - 1/n_j) = target")
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--max-len", type=int, default=8)
    sp.set_defaults(func=cmd_sums)

    sp = sub.add_parser("bounds", help="table of bounds")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("construct", help="explicit constructions")
    sp.add_argument("kind", choices=["even", "odd", "nklt", "iterated"])
    sp.add_argument("scene", nargs="?")
    sp.add_argument("--n", type=int)
    sp.add_argument("--s")
    sp.add_argument("--b1")
    sp.add_argument("--b2")
    sp.add_argument("--emit-scene")
    sp.add_argument("--csv")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="run the acceptance criteria")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.set_defaults(func=cmd_verify)
    return p


def _finish(report: dict, args, ctx: Context, started: float) -> dict:
    body = {
        "command": args.command,
        "argv": ctx.argv,
        "inputs_digest": ctx.digest(),
        "outputs": report.get("outputs", {}),
        "certificates": report.get("certificates", {}),
        "checks": report.get("checks", {}),
    }
    if "signal" in report:
        body["signal"] = report["signal"]
    if args.timing:
        body["wall_time_s"] = round(time.perf_counter() - started, 3)
    return _jsonable(body)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ctx = Context(argv)
    started = time.perf_counter()
    try:
        report = args.func(args, ctx)
        code = 0
    except Signal as sig:
        report, code = sig.report, 1
    except NotLogCanonical as exc:
        report = {"signal": {"kind": "not_lc", "message": str(exc), "witness": exc.witness}}
        code = 1
    except NotBig as exc:
        report = {"signal": {"kind": "not_big", "message": str(exc), "value": exc.value}}
        code = 1
    except NoZariskiDecomposition as exc:
        report = {"signal": {"kind": "no_zariski", "message": str(exc)}}
        code = 1
    except (Malformed, SceneError) as exc:
        print(json.dumps({"error": "malformed input", "field": exc.field, "message": str(exc)}), file=stderr)
        return 2
    except (ConfigError, ValueError) as exc:
        print(json.dumps({"error": "malformed input", "field": args.command, "message": str(exc)}), file=stderr)
        return 2
    print(json.dumps(_finish(report, args, ctx, started), indent=2), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
