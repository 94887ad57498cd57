import json

import jsonschema
import pytest

from chromahopf import cli
from chromahopf.report import load_schema


@pytest.mark.parametrize("argv", [
    ["--max-degree", "9"],
    ["--suite", "ybe,nope"],
    ["--cplus", "0"],
    ["--cminus", "x/y"],
    ["--colours", "1"],
    ["--oracle-trials", "0"],
    ["--convention", "other"],
    ["--no-such-flag"],
])
def test_config_errors_exit_2(argv, tmp_path):
    assert cli.main(argv + ["--report", str(tmp_path)]) == 2


def test_ybe_suite(tmp_path):
    assert cli.main(["--suite", "ybe", "--report", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "report.json").read_text())
    jsonschema.validate(data, load_schema())
    assert data["summary"]["fail"] == 0
    assert any(c["id"].startswith("rmatrix.cybe") for c in data["checks"])
    assert all(c["paper_ref"] for c in data["checks"])
    assert (tmp_path / "report.md").read_text().startswith("# chroma-hopf")


def test_format_json_only(tmp_path):
    assert cli.main(["--suite", "ybe", "--format", "json", "--report", str(tmp_path)]) == 0
    assert not (tmp_path / "report.md").exists()


def test_seeded_reports_are_byte_identical(tmp_path):
    args = ["--suite", "ybe,oracle", "--oracle-trials", "2", "--seed", "11", "--no-timing", "--format", "json"]
    assert cli.main(args + ["--report", str(tmp_path / "a")]) == 0
    assert cli.main(args + ["--report", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a" / "report.json").read_bytes() == (tmp_path / "b" / "report.json").read_bytes()


def test_fixed_pair_finding(tmp_path):
    assert cli.main(["--suite", "dual", "--convention", "fixed-pair", "--report", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "report.json").read_text())
    jsonschema.validate(data, load_schema())
    (finding,) = [c for c in data["checks"] if c["id"] == "dualfun.fixed_pair_degeneracy"]
    assert finding["verdict"] == "FINDING"
    assert finding["details"]["B_identical"] and finding["details"]["C_identical"]


def test_required_failure_exit_1(tmp_path):
    # the literal base-q determinant and antipode are a required check that fails
    assert cli.main(["--suite", "hopf", "--report", str(tmp_path)]) == 1


def test_internal_error_exit_3(tmp_path, monkeypatch):
    def boom(cfg):
        raise RuntimeError("boom")

    monkeypatch.setattr(cli, "run_suite", boom)
    assert cli.main(["--suite", "ybe", "--report", str(tmp_path)]) == 3


def test_config_round_trip():
    cfg = cli.SuiteConfig(suites=("ybe",), cplus="2/3", seed=4)
    assert cli.SuiteConfig.from_dict({**cfg.to_dict(), "suites": ("ybe",)}).to_dict() == cfg.to_dict()
    with pytest.raises(cli.ConfigError):
        cli.SuiteConfig(suites=("ybe",), max_degree=1)
