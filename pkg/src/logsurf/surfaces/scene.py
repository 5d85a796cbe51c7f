"""JSON scene files: a base surface, curves, a blow-up script and a boundary.

    {"base": {"kind": "P2"},
     "curves": [{"name": "B1", "class": {"L": 1}}],
     "blowups": [{"at": {"node": ["B1", "B2"]}, "name": "E1"}],
     "boundary": {"B1": "1", "B2": "2/3"}}

Curves declared after some blow-ups carry ``"stage": k``.  Exceptional
curves are created by the blow-ups and are not listed under ``curves``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from logsurf.rational import fmt, parse_rational
from logsurf.surfaces.config import ConfigError, SurfaceConfig, make_base
from logsurf.surfaces.pairs import LogPair


class SceneError(ValueError):
    """A malformed scene; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _base_from_json(data: Any) -> SurfaceConfig:
    if isinstance(data, str):
        data = {"kind": data}
    if not isinstance(data, dict) or "kind" not in data:
        raise SceneError("base", "expected an object with a 'kind'")
    try:
        return make_base(data["kind"], int(data.get("n", 0)))
    except (ConfigError, ValueError, TypeError) as exc:
        raise SceneError("base", str(exc)) from None


def load_scene(data: dict) -> LogPair:
    if not isinstance(data, dict):
        raise SceneError("scene", "expected a JSON object")
    unknown = set(data) - {"base", "curves", "blowups", "boundary"}
    if unknown:
        raise SceneError(sorted(unknown)[0], "unknown top-level field")
    config = _base_from_json(data.get("base"))
    curves = data.get("curves", [])
    blowups = data.get("blowups", [])
    if not isinstance(curves, list):
        raise SceneError("curves", "expected a list")
    if not isinstance(blowups, list):
        raise SceneError("blowups", "expected a list")
    by_stage: dict[int, list[tuple[int, dict]]] = {}
    for i, c in enumerate(curves):
        if not isinstance(c, dict) or "name" not in c or "class" not in c:
            raise SceneError(f"curves[{i}]", "needs 'name' and 'class'")
        stage = c.get("stage", 0)
        if not isinstance(stage, int) or not 0 <= stage <= len(blowups):
            raise SceneError(f"curves[{i}].stage", "must be an integer between 0 and the number of blow-ups")
        by_stage.setdefault(stage, []).append((i, c))
    b = config.builder()

    def add_stage(k: int) -> None:
        for i, c in by_stage.get(k, []):
            if not isinstance(c["class"], dict):
                raise SceneError(f"curves[{i}].class", "expected an object")
            try:
                b.add_curve(str(c["name"]), c["class"], c.get("meets"))
            except ConfigError as exc:
                raise SceneError(f"curves[{i}]", str(exc)) from None

    add_stage(0)
    for k, bu in enumerate(blowups):
        if not isinstance(bu, dict) or "at" not in bu or "name" not in bu:
            raise SceneError(f"blowups[{k}]", "needs 'at' and 'name'")
        try:
            b.blow_up(bu["at"], str(bu["name"]))
        except ConfigError as exc:
            raise SceneError(f"blowups[{k}]", str(exc)) from None
        add_stage(k + 1)
    config = b.freeze()
    boundary_raw = data.get("boundary", {})
    if not isinstance(boundary_raw, dict):
        raise SceneError("boundary", "expected an object")
    boundary = {}
    for name, v in boundary_raw.items():
        if not config.has_curve(name):
            raise SceneError(f"boundary.{name}", "unknown curve")
        try:
            boundary[name] = parse_rational(v)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise SceneError(f"boundary.{name}", str(exc)) from None
    return LogPair(config, boundary)


def dump_scene(pair: LogPair) -> dict:
    s = pair.surface
    base: dict[str, Any] = {"kind": s.base.kind}
    if s.base.kind == "F":
        base["n"] = s.base.n
    names = s.class_names
    curves = []
    for c in s.curves:
        if c.exceptional:
            continue
        # the declared class is the class at the stage of declaration
        cls = s.class_at_stage(c.name, c.stage)
        entry: dict[str, Any] = {"name": c.name, "class": {names[i]: v for i, v in sorted(cls.items())}}
        if c.stage:
            entry["stage"] = c.stage
        curves.append(entry)
    blowups = []
    for bu in s.blowups:
        if bu.at == "node":
            at: Any = {"node": list(bu.through)}
        elif bu.at == "on":
            at = {"on": bu.through[0]}
        else:
            at = "general"
        blowups.append({"at": at, "name": bu.name})
    return {
        "base": base,
        "curves": curves,
        "blowups": blowups,
        "boundary": {k: fmt(v) for k, v in pair.boundary.items()},
    }


def read_scene(path: str | Path) -> LogPair:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SceneError("path", str(exc)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError("json", str(exc)) from None
    return load_scene(data)


def boundary_from_text(text: str) -> dict[str, Fraction]:
    out = {}
    for item in text.split(","):
        name, _, v = item.partition(":")
        out[name.strip()] = parse_rational(v or "1")
    return out
