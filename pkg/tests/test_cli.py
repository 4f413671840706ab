"""Command-line interface: outputs, exit codes, and determinism."""

import json

import pytest

from welattice.cli import main

E1H6_DOC = {
    "buyers": [1, 2],
    "goods": ["a"],
    "valuations": [[5], [3]],
    "h_override": 6,
}
E2_DOC = {"buyers": [1, 2], "goods": ["a", "b"], "valuations": [[4, 1], [3, 2]]}


@pytest.fixture
def e1_path(tmp_path):
    path = tmp_path / "e1.json"
    path.write_text(json.dumps(E1H6_DOC))
    return str(path)


@pytest.fixture
def e2_path(tmp_path):
    path = tmp_path / "e2.json"
    path.write_text(json.dumps(E2_DOC))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def result_of(out):
    envelope = json.loads(out)
    assert set(envelope) == {"tool_version", "market_digest", "command", "result"}
    return envelope["result"]


def test_demand(capsys, e2_path):
    code, out, _ = run(capsys, ["demand", "--market", e2_path, "--price", "0,0"])
    assert code == 0
    result = result_of(out)
    assert result["demand"] == {"1": ["a"], "2": ["a"]}


def test_analyze(capsys, e2_path):
    code, out, _ = run(capsys, ["analyze", "--market", e2_path, "--price", "1,0"])
    assert code == 0
    result = result_of(out)
    assert result["we"]["is_we"] is True
    assert result["overdemand"]["verdict"] == "none"
    assert result["we_by_characterization"] is True


def test_tipping(capsys, e1_path):
    code, out, _ = run(
        capsys, ["tipping", "--market", e1_path, "--good", "a", "--price", ""]
    )
    assert code == 0
    result = result_of(out)
    assert result == {
        "good": "a",
        "base_prices": [],
        "sup_O": 3,
        "inf_U": 5,
        "S": 3,
        "I": 5,
    }


def test_map_and_region(capsys, e2_path):
    code, out, _ = run(capsys, ["map", "--market", e2_path, "--price", "0,0"])
    assert code == 0
    result = result_of(out)
    assert result["output"] == [1, 0]
    assert result["goods"]["a"]["region"] == "below_S"

    code, out, _ = run(
        capsys, ["region", "--market", e2_path, "--price", "0,0", "--good", "b"]
    )
    assert code == 0
    assert result_of(out)["region"] == "neutral"


def test_iterate_json(capsys, e2_path):
    code, out, err = run(capsys, ["iterate", "--market", e2_path, "--from", "bottom"])
    assert code == 0
    result = result_of(out)
    assert result["points"][-1] == [1, 0]
    assert result["converged"] is True
    assert "fixed point reached" in err


def test_iterate_table(capsys, e2_path):
    code, out, err = run(
        capsys,
        ["iterate", "--market", e2_path, "--from", "top", "--format", "table"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "step\tgood\tprice"
    assert lines[-1].split("\t")[1:] == ["b", "2"]
    assert "fixed point reached" in err


def test_equilibria(capsys, e2_path):
    code, out, _ = run(capsys, ["equilibria", "--market", e2_path])
    assert code == 0
    result = result_of(out)
    assert result["min_we"] == [1, 0]
    assert result["max_we"] == [4, 2]
    assert result["lattice_certified"] is True


def test_delta_override(capsys, e2_path):
    code, out, _ = run(
        capsys, ["equilibria", "--market", e2_path, "--delta", "1"]
    )
    assert code == 0
    result = result_of(out)
    assert len(result["we_points"]) == 8
    assert result["fixed_points"] == result["we_points"]


def test_lattice_check(capsys, e2_path):
    code, out, _ = run(capsys, ["lattice-check", "--market", e2_path])
    assert code == 0
    result = result_of(out)
    assert result["certified"] is True
    assert result["closure_failures"] == []


def test_out_flag(capsys, tmp_path, e2_path):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, ["analyze", "--market", e2_path, "--price", "1,0", "--out", str(target)]
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["command"] == "analyze"


def test_reports_are_deterministic(capsys, e2_path):
    _, first, _ = run(capsys, ["equilibria", "--market", e2_path])
    _, second, _ = run(capsys, ["equilibria", "--market", e2_path])
    assert first == second


def test_gen_is_replayable(capsys):
    argv = ["gen", "--buyers", "3", "--goods", "2", "--max-value", "6", "--seed", "42"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    assert first == second
    doc = json.loads(first)
    assert len(doc["valuations"]) == 3
    _, other, _ = run(
        capsys,
        ["gen", "--buyers", "3", "--goods", "2", "--max-value", "6", "--seed", "43"],
    )
    assert other != first


def test_selfcheck_degenerate(capsys):
    code, out, _ = run(
        capsys,
        ["selfcheck", "--trials", "1", "--seed", "1", "--goods", "1", "--buyers", "1"],
    )
    assert code == 0
    assert "FAIL" not in out


def test_usage_errors(capsys, tmp_path, e2_path):
    code, _, err = run(capsys, ["demand", "--market", e2_path, "--price", "0.3,0"])
    assert code == 2 and "error:" in err

    code, _, err = run(
        capsys, ["demand", "--market", str(tmp_path / "missing.json"), "--price", "0,0"]
    )
    assert code == 2

    code, _, err = run(
        capsys,
        ["demand", "--market", e2_path, "--price", "0,0", "--format", "table"],
    )
    assert code == 2
    assert "table format" in err
