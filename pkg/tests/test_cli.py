from __future__ import annotations

import io
import json
from fractions import Fraction

import pytest

from logsurf.cli import run
from logsurf.surfaces import load_scene


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    report = json.loads(out.getvalue()) if out.getvalue() else None
    return code, report, err.getvalue()


@pytest.fixture
def plane_scene(tmp_path):
    def write(boundary, extra=None):
        data = {
            "base": {"kind": "P2"},
            "curves": [{"name": f"L{j}", "class": {"L": 1}} for j in range(1, 5)],
            "boundary": boundary,
            **(extra or {}),
        }
        p = tmp_path / "scene.json"
        p.write_text(json.dumps(data))
        return str(p)

    return write


def test_bounds_table():
    code, rep, _ = call("bounds")
    assert code == 0
    assert rep["outputs"]["lower_bound_C2"]["value"] == "1/86436"
    assert rep["checks"]["lower_bound_recomputed"] is True


def test_construct_even():
    code, rep, _ = call("construct", "even", "--n", "4")
    assert code == 0 and rep["outputs"]["volume"] == "4"


def test_lc_check_non_lc_scene(plane_scene):
    code, rep, _ = call("lc-check", plane_scene({"L1": "3/2"}))
    assert code == 1
    assert rep["outputs"]["verdict"] == "not_lc"


def test_volume_of_four_lines(plane_scene):
    code, rep, _ = call("volume", plane_scene({f"L{j}": "1" for j in range(1, 5)}))
    assert code == 0 and rep["outputs"]["volume"] == "1"


def test_volume_not_lc_is_a_signal(plane_scene):
    code, rep, _ = call("volume", plane_scene({"L1": "2"}))
    assert code == 1 and rep["signal"]["kind"] == "not_lc"


def test_zariski_divisor_syntax(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"base": "P2", "blowups": [{"at": "general", "name": "E"}]}))
    code, rep, _ = call("zariski", str(p), "--divisor", "L,E")
    assert code == 0
    assert rep["outputs"]["negative"] == {"E": "1"}
    assert rep["outputs"]["P^2"] == "1"
    q = tmp_path / "line.json"
    q.write_text(json.dumps({"base": "P2", "curves": [{"name": "A", "class": {"L": 1}}]}))
    code, rep, _ = call("zariski", str(q), "--divisor", "K")
    assert code == 1 and rep["signal"]["kind"] == "no_zariski"


def test_different():
    code, rep, _ = call("different", "--chain", "2,3", "--hits", "2:1:1/2")
    assert code == 0
    out = rep["outputs"]
    assert (out["m"], out["n_j"], out["b_prime"]) == (5, [1], "9/10")
    assert out["discrepancies"] == ["1/10", "1/5"]
    assert rep["certificates"]["standard"] == {"n": 10, "m": 5, "n_prime": 2}
    code, rep, _ = call("different", "--chain", "2,3", "--hits", "1:1:1/2")
    assert code == 1 and rep["signal"]["kind"] == "not_lc"


def test_tm_and_sums():
    assert call("tm", "--set", "C2", "--m", "6")[1]["outputs"]["t_m"] == "1"
    rep = call("tm", "--set", '{"finite": ["1/5"]}', "--m", "3")[1]
    assert rep["outputs"]["t_m"] == "4/3"
    rep = call("sums", "--target", "2")[1]
    assert rep["outputs"]["solutions"] == [[2, 3, 6], [2, 4, 4], [3, 3, 3], [2, 2, 2, 2]]
    assert rep["certificates"]["cartier_multiples"] == [1, 2, 3, 4, 6]


@pytest.mark.parametrize(
    "argv",
    [
        ["nosuch"],
        ["tm", "--m", "x"],
        ["tm", "--set", "C9", "--m", "2"],
        ["different", "--chain", "1,2"],
        ["different", "--chain", "2", "--hits", "1:1:0.5"],
        ["sums", "--target", "3"],
        ["construct", "iterated", "--n", "5", "--s", "2,2"],
        ["volume", "/nonexistent/scene.json"],
    ],
)
def test_malformed_input_exits_2(argv):
    code, rep, _ = call(*argv)
    assert code == 2 and rep is None


def test_malformed_scene_names_the_field(plane_scene):
    code, _, err = call("volume", plane_scene({"L1": "1/2"}, {"colour": "red"}))
    assert code == 2
    assert json.loads(err)["field"] == "colour"


def test_not_big_is_a_signal():
    code, rep, _ = call("construct", "iterated", "--n", "4", "--s", "2,2,2")
    assert code == 1 and rep["signal"]["kind"] == "not_big"
    assert rep["signal"]["value"] == "-1/2"


def test_emit_scene_round_trip_and_csv(tmp_path):
    scene = tmp_path / "even.json"
    code, rep, _ = call("construct", "even", "--n", "3", "--emit-scene", str(scene))
    assert code == 0
    chain_scene, table = tmp_path / "chain.json", tmp_path / "chain.csv"
    code, rep, _ = call(
        "construct", "nklt", str(scene), "--b1", "H1", "--b2", "V1", "--s", "4",
        "--emit-scene", str(chain_scene), "--csv", str(table),
    )
    assert code == 0 and rep["outputs"]["value"] == "7/4"
    assert table.read_text().splitlines() == [
        "s,volume,decimal",
        "1,1,1",
        "2,3/2,1.5",
        "3,5/3,1.66666666667",
        "4,7/4,1.75",
    ]
    code, rep, _ = call("volume", str(chain_scene))
    assert rep["outputs"]["volume"] == "7/4"
    # the emitted scene reparses to the same configuration
    again = load_scene(json.loads(chain_scene.read_text()))
    assert again.boundary["E1"] == Fraction(3, 4)
    assert again.surface.self_intersection("E4") == -1


def test_iterated_emits_reparsable_scene(tmp_path):
    scene = tmp_path / "it.json"
    code, rep, _ = call("construct", "iterated", "--n", "5", "--s", "2,3,4,5", "--emit-scene", str(scene))
    assert code == 0 and rep["outputs"]["value"] == "163/60"
    assert call("volume", str(scene))[1]["outputs"]["volume"] == "163/60"


def test_reports_are_byte_stable(plane_scene):
    path = plane_scene({f"L{j}": "1/2" for j in range(1, 5)})
    a, b = io.StringIO(), io.StringIO()
    run(["zariski", path], stdout=a)
    run(["zariski", path], stdout=b)
    assert a.getvalue() == b.getvalue()
    assert "wall_time_s" not in a.getvalue()
    code, rep, _ = call("--timing", "bounds")
    assert "wall_time_s" in rep


def test_digest_tracks_file_contents(plane_scene):
    d1 = call("lc-check", plane_scene({"L1": "1/2"}))[1]["inputs_digest"]
    d2 = call("lc-check", plane_scene({"L1": "1/3"}))[1]["inputs_digest"]
    assert d1 != d2


def test_verify_subset():
    code, rep, _ = call("verify", "--only", "1,5,6")
    assert code == 0
    assert rep["checks"] == {"criterion_1": True, "criterion_5": True, "criterion_6": True}
