import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from routespec.cli import main
from routespec.generators import random_networks
from routespec.network import serialize_project

from conftest import DATA

SCHEMA = json.loads((DATA.parent / "docs" / "analysis-report.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_toy(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "toy.json", "--target-tau", "10,12,10")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["schedule"]["completion_time"] == 12
    assert doc["schedule"]["critical_path_activities"] == [["A1", "A3", "A5"]]
    np.testing.assert_allclose(doc["target"]["durations"], [5.5, 4.5, 1, 4.5, 5.5], atol=1e-9)
    assert doc["target"]["reachable"] is True
    assert doc["relevance"]["top_activities"] == ["A1", "A5"]
    assert doc["nullspace"]["basis"] == [[-1, 0, 1, 1, 0], [0, -1, -1, 0, 1]]
    assert doc["stress"]["value"] == pytest.approx((344 / 513) ** 0.5, abs=1e-11)


def test_analyze_single(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "single.json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert code == 0 and doc["schedule"]["completion_time"] == 3


def test_analyze_text_and_csv_input(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "toy.csv", "--format", "text")
    assert code == 0
    assert "completion time: 12" in out and "* R2: A1 -> A3 -> A5" in out


def test_analyze_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "routespec", "analyze", str(DATA / "toy.json"), "--target-tau", "1,2,3"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_reports_validate_on_random_networks(tmp_path, capsys):
    rng = np.random.default_rng(8)
    for k, net in enumerate(random_networks(rng, 10, max_paths=100)):
        path = tmp_path / f"n{k}.json"
        path.write_text(serialize_project(net))
        code, out, _ = run(capsys, "analyze", path, "-p", "inf")
        assert code == 0
        jsonschema.validate(json.loads(out), SCHEMA)


def test_subcommands(capsys, tmp_path):
    _, out, _ = run(capsys, "nullspace", DATA / "toy.json")
    assert json.loads(out)["basis"] == [[-1, 0, 1, 1, 0], [0, -1, -1, 0, 1]]
    _, out, _ = run(capsys, "nullspace", DATA / "toy.json", "--format", "csv")
    assert out.splitlines() == ["A1,A2,A3,A4,A5", "-1,0,1,1,0", "0,-1,-1,0,1"]

    single_max = tmp_path / "s.json"
    single_max.write_text('{"activities": [{"id": "A", "source": "s", "sink": "f", "duration": 2, "max_duration": 2}]}')
    _, out, _ = run(capsys, "stress", single_max, "-p", "inf")
    assert json.loads(out) == {"p": "inf", "stress": 1.0}

    _, out, _ = run(capsys, "spectral", DATA / "toy.json", "--threshold", "0.6", "--order", "1")
    doc = json.loads(out)
    assert doc["minimal_order"] == 2
    assert doc["reconstruction"] == [[0, 0, 0, 0, 0], [1, 0, 1, 0, 1], [0, 0, 0, 0, 0]]

    _, out, _ = run(capsys, "paths", DATA / "toy.json", "--format", "csv")
    assert out.splitlines()[1:] == ["0,1,0,0,1", "1,0,1,0,1", "1,0,0,1,0"]

    _, out, _ = run(capsys, "svd", DATA / "toy.json")
    np.testing.assert_allclose(json.loads(out)["sigma"], [2, 2 ** 0.5, 1], atol=1e-12)

    _, out, _ = run(capsys, "pinv", DATA / "toy.json", "--target-tau", "10,12,10")
    doc = json.loads(out)
    np.testing.assert_allclose(np.array(doc["pseudoinverse"]) * 8,
                               [[-1, 2, 3], [5, -2, 1], [-2, 4, -2], [1, -2, 5], [3, 2, -1]], atol=1e-9)
    np.testing.assert_allclose(doc["durations"], [5.5, 4.5, 1, 4.5, 5.5], atol=1e-9)

    _, out, _ = run(capsys, "lp-export", DATA / "toy.json")
    assert " c4: - x_4 - x_5 = -1\n" in out
    target = tmp_path / "toy.lp"
    code, out, _ = run(capsys, "lp-export", DATA / "toy.json", "-o", target)
    assert code == 0 and out == "" and target.read_text().startswith("\\")


def test_error_exit_codes(capsys, tmp_path, monkeypatch):
    bad = tmp_path / "bad.json"
    bad.write_text('{"activities": [')
    code, _, err = run(capsys, "analyze", bad)
    assert code == 1 and json.loads(err)["error"]["kind"] == "parse"

    cyc = tmp_path / "cyc.csv"
    cyc.write_text("id,source,sink,duration\nA1,a,b,1\nA2,b,a,1\n")
    code, _, err = run(capsys, "paths", cyc)
    assert code == 1 and json.loads(err)["error"]["kind"] == "cycle"

    code, _, err = run(capsys, "paths", DATA / "toy.json", "--max-paths", "2")
    assert code == 2 and json.loads(err)["error"]["count"] == 3

    monkeypatch.setenv("ROUTESPEC_MAX_PATHS", "2")
    assert run(capsys, "paths", DATA / "toy.json")[0] == 2
    assert run(capsys, "paths", DATA / "toy.json", "--max-paths", "5")[0] == 0

    no_max = tmp_path / "nomax.json"
    no_max.write_text('{"activities": [{"id": "A", "source": "s", "sink": "f", "duration": 2}]}')
    code, _, err = run(capsys, "stress", no_max)
    assert code == 1 and "maximum durations" in json.loads(err)["error"]["message"]


def test_numerical_failure_exit_code(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise np.linalg.LinAlgError("SVD did not converge")
    monkeypatch.setattr("routespec.spectral.np.linalg.svd", broken)
    code, _, err = run(capsys, "svd", DATA / "toy.json")
    assert code == 3 and json.loads(err)["error"]["kind"] == "numerical"
