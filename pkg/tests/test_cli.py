import json

import numpy as np
import pytest

from siegelwp.artifacts import read_complex_matrix_csv
from siegelwp.cli import main, parse_config
from siegelwp.errors import ConfigError

FLOW_SPEC = {"type": "flow", "coeffs": [[2, 0.05, 0.0], [3, 0.0, 0.02]], "t": 0.5}


# --- config parsing ----------------------------------------------------------


def test_defaults():
    cfg = parse_config("")
    assert cfg.N == 64
    assert cfg.M == 256
    assert cfg.eps == 1e-3
    assert cfg.tolerances == {}
    assert cfg.map_spec is None


def test_rejects_bad_N():
    for doc in ('{"N": 0}', '{"N": true}', '{"N": 2.5}', '{"N": "64"}'):
        with pytest.raises(ConfigError):
            parse_config(doc)


def test_rejects_undersampled_M():
    with pytest.raises(ConfigError):
        parse_config('{"N": 64, "M": 128}')
    assert parse_config('{"N": 32, "M": 128}').M == 128


def test_rejects_bad_eps_and_tolerances():
    with pytest.raises(ConfigError):
        parse_config('{"eps": 0}')
    with pytest.raises(ConfigError):
        parse_config('{"eps": true}')
    with pytest.raises(ConfigError):
        parse_config('{"tolerances": [1]}')
    with pytest.raises(ConfigError):
        parse_config('{"tolerances": {"x": -1}}')


def test_rejects_non_object_and_bad_json():
    with pytest.raises(ConfigError):
        parse_config("[1, 2]")
    with pytest.raises(ConfigError):
        parse_config("{not json")


def test_unknown_keys_warn_or_raise(capsys):
    cfg = parse_config('{"bogus": 1}')
    assert cfg.N == 64
    assert "bogus" in capsys.readouterr().err
    with pytest.raises(ConfigError):
        parse_config('{"bogus": 1}', strict=True)


def test_map_and_map_path_are_exclusive(tmp_path):
    spec = tmp_path / "map.json"
    spec.write_text(json.dumps(FLOW_SPEC))
    cfg = parse_config(json.dumps({"map_path": str(spec)}))
    assert cfg.map_spec == FLOW_SPEC
    with pytest.raises(ConfigError):
        parse_config(json.dumps({"map": FLOW_SPEC, "map_path": str(spec)}))
    with pytest.raises(ConfigError):
        parse_config(json.dumps({"map_path": str(tmp_path / "absent.json")}))


# --- the command line --------------------------------------------------------


def run_cli(tmp_path, command, config, seed=0):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(config))
    out = tmp_path / "artifacts"
    code = main([command, "--config", str(cfg_path), "--out", str(out), "--seed", str(seed)])
    report = json.loads((out / "report.json").read_text()) if (out / "report.json").exists() else None
    return code, out, report


def test_period_map_on_rotation(tmp_path):
    code, out, report = run_cli(
        tmp_path, "period-map", {"N": 16, "map": {"type": "rotation", "theta": 0.7}}
    )
    assert code == 0
    Z = read_complex_matrix_csv(str(out / "period_point.csv"))
    assert Z.shape == (16, 16)
    assert np.max(np.abs(Z)) < 1e-13
    names = [c["name"] for c in report["checks"]]
    assert "reality_defect" in names
    assert "period_symmetry" in names


def test_report_schema(tmp_path):
    code, out, report = run_cli(
        tmp_path, "period-map", {"N": 8, "map": FLOW_SPEC}, seed=3
    )
    assert code == 0
    assert set(report) == {"command", "config", "seed", "checks", "artifacts"}
    assert report["command"] == "period-map"
    assert report["seed"] == 3
    for c in report["checks"]:
        assert set(c) == {"name", "value", "tol", "pass"}
    for name in report["artifacts"]:
        assert (out / name).exists()


def test_tolerance_failure_sets_exit_one(tmp_path, capsys):
    code, _, report = run_cli(
        tmp_path,
        "period-map",
        {"N": 16, "map": FLOW_SPEC, "tolerances": {"reality_defect": 1e-30}},
    )
    assert code == 1
    captured = capsys.readouterr()
    assert "reality_defect" in captured.err
    failed = [c for c in report["checks"] if not c["pass"]]
    assert failed and failed[0]["name"] == "reality_defect"


def test_config_error_sets_exit_two(tmp_path, capsys):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text("{broken")
    code = main(["period-map", "--config", str(cfg_path), "--out", str(tmp_path / "a")])
    assert code == 2
    assert "config error" in capsys.readouterr().err


def test_missing_map_sets_exit_two(tmp_path, capsys):
    code, _, _ = run_cli(tmp_path, "period-map", {"N": 8})
    assert code == 2
    assert "map" in capsys.readouterr().err


def test_strict_flag_rejects_unknown_keys(tmp_path, capsys):
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text('{"stray": 1}')
    code = main(["wp-pullback", "--config", str(cfg_path), "--strict",
                 "--out", str(tmp_path / "a")])
    assert code == 2


def test_qs_estimate_runs(tmp_path):
    code, out, report = run_cli(
        tmp_path, "qs-estimate", {"map": {"type": "rotation", "theta": 1.1}}
    )
    assert code == 0
    bound = next(c for c in report["checks"] if c["name"] == "qs_bound")
    assert abs(bound["value"] - 1.0) < 1e-12
    assert (out / "qs_profile.csv").exists()


def test_beltrami_norms_runs(tmp_path):
    code, out, report = run_cli(tmp_path, "beltrami-norms", {})
    assert code == 0
    assert all(c["pass"] for c in report["checks"])


def test_siegel_demo_runs(tmp_path):
    code, out, report = run_cli(tmp_path, "siegel-demo", {}, seed=5)
    assert code == 0
    names = {c["name"] for c in report["checks"]}
    assert {"rank_one_agreement", "metric_invariance", "orbit_containment"} <= names
    assert (out / "orbit_samples.csv").exists()
