# tests/test_cli.py
import json

import pytest

import main as cli


@pytest.fixture(autouse=True)
def quiet_environment(monkeypatch):
    monkeypatch.delenv("CARATHEODORY_SEED", raising=False)
    monkeypatch.delenv("CARATHEODORY_LOG_LEVEL", raising=False)


def test_list(capsys):
    assert cli.main(["list"]) == cli.EXIT_PASS
    out = capsys.readouterr().out
    groups = out.split("functions:")[0]
    for name in ("circle", "complex-mul", "matrix-add:n", "pos-real-mul", "real-add"):
        assert f"  {name}" in groups
    assert "no canonical unique n-th root" in groups
    for name in ("square-matrix", "cube-circle", "const", "identity", "square-matrix/perturbed"):
        assert name in out
    suites = out.split("suites:")[1]
    for name in ("axioms", "homspace", "derivative", "theorems", "all"):
        assert f"  {name}" in suites


def test_list_registry_is_stable():
    assert cli.list_registry() == cli.list_registry()


def test_unknown_group_is_a_configuration_error(capsys):
    assert cli.main(["run", "axioms", "--group", "nope"]) == cli.EXIT_CONFIGURATION
    assert "nope" in capsys.readouterr().err


def test_unknown_suite_and_bad_tolerance(capsys):
    assert cli.main(["run", "everything"]) == cli.EXIT_CONFIGURATION
    assert cli.main(["run", "axioms", "--tolerance", "fact"]) == cli.EXIT_CONFIGURATION
    assert cli.main(["run", "axioms", "--tolerance", "nope=1"]) == cli.EXIT_CONFIGURATION


def test_explain(capsys):
    assert cli.main(["explain", "02-group-metric/real-add/product-bound", "--group", "real-add"]) == cli.EXIT_PASS
    out = capsys.readouterr().out
    assert "definition:group-metric/product-bound" in out
    assert "fp = 1e-09" in out
    assert cli.main(["explain", "99-nothing/here"]) == cli.EXIT_CONFIGURATION


def test_run_writes_the_report(tmp_path, capsys):
    out = tmp_path / "reports" / "axioms.json"
    code = cli.main(["run", "axioms", "--group", "real-add", "--samples", "200", "--seed", "7", "--out", str(out)])
    assert code == cli.EXIT_PASS
    report = json.loads(out.read_text())
    assert report["schema_version"] == 1
    assert report["comparison"]["passed"] is True
    assert report["comparison"]["config"]["seed"] == 7
    ids = [entry["check_id"] for entry in report["comparison"]["entries"]]
    assert ids == sorted(ids)
    assert all(entry["anchor"] for entry in report["comparison"]["entries"])
    assert "01-metric-axioms/real-add" in capsys.readouterr().err


def test_run_prints_json_to_stdout(capsys):
    assert cli.main(["run", "--suite", "axioms", "--group", "circle", "--samples", "50"]) == cli.EXIT_PASS
    report = json.loads(capsys.readouterr().out)
    assert report["comparison"]["config"]["groups"] == ["circle"]


def test_failing_run_exits_with_one(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"functions": ["square-matrix"], "derivative_samples": 50, "probe_count": 16}))
    out = tmp_path / "report.json"
    code = cli.main(
        ["run", "derivative", "--config", str(config), "--tolerance", "limit=1e-12", "--out", str(out), "--failures-only"]
    )
    assert code == cli.EXIT_FAILURE
    assert "check(s) failed" in capsys.readouterr().err
    report = json.loads(out.read_text())
    assert report["comparison"]["failures"] > 0
    assert report["comparison"]["config"]["tolerances"]["limit"] == 1e-12


def test_same_seed_gives_identical_comparison(tmp_path):
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        assert cli.main(["run", "axioms", "--group", "matrix-add:2", "--samples", "100", "--out", str(path)]) == 0
    first, second = (json.loads(p.read_text())["comparison"] for p in paths)
    assert first == second
