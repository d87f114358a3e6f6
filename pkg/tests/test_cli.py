import json
import math

import pytest

from zetameans import config
from zetameans.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, Settings, build_parser, main


def test_hyperbola_prints_json(capsys):
    assert main(["hyperbola", "--n", "10", "100"]) == EXIT_OK
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert [row["n"] for row in rows] == [10, 100]
    assert rows[0]["total"] == pytest.approx(15.0456349206, rel=1e-10)


def test_density_prints_members(capsys):
    assert main(["density", "--t", repr(20 * math.pi), "--eta", "0.25", "--members"]) == EXIT_OK
    row = json.loads(capsys.readouterr().out)[0]
    assert row["count"] == 5
    assert row["members"] == [1, 2, 5, 9, 10]
    assert "saffari_density" in row


def test_unknown_suite_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "bogus"])
    assert info.value.code == 2


def test_sweep_without_estimator():
    assert main(["sweep", "--t", "200", "--x", "1"]) == EXIT_USAGE


def test_sweep_with_bad_grid():
    assert main(["sweep", "--estimator", "cor3", "--t", "400", "200", "--x", "1"]) == EXIT_USAGE


def test_sweep_writes_csv(tmp_path):
    out = tmp_path / "cor3.csv"
    code = main([
        "sweep", "--estimator", "cor3", "--t", "200", "400", "--x", "1", "2",
        "--precision-bits", "53", "--out", str(out),
    ])
    assert code == EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("sigma,t,x,y,dist_y,in_A")
    assert len(lines) == 5


def test_pole_is_numeric_failure(capsys):
    assert main(["eval", "--sigma", "1", "--t", "0"]) == EXIT_FAILURE
    assert "PoleError" in capsys.readouterr().err


def test_flag_beats_config_file(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("eta = 0.2\nn-order = 3\n", encoding="utf-8")
    parser = build_parser()

    from_file = Settings(parser.parse_args(["density", "--config", str(path)]))
    assert from_file.eta == 0.2
    assert from_file.get("n_order", int, config.N_ORDER) == 3

    from_flag = Settings(parser.parse_args(["density", "--config", str(path), "--eta", "0.1"]))
    assert from_flag.eta == 0.1

    assert Settings(parser.parse_args(["density"])).eta == config.ETA


def test_config_list_values(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("t = 100, 200 400\n", encoding="utf-8")
    settings = Settings(build_parser().parse_args(["sweep", "--config", str(path)]))
    assert settings.get_list("t", float) == [100.0, 200.0, 400.0]


def test_bad_config_value_is_usage_error(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("eta = wide\n", encoding="utf-8")
    assert main(["density", "--config", str(path), "--t", "100"]) == EXIT_USAGE
