import json
import os

from click.testing import CliRunner

from isacpulse import serialize
from isacpulse.cli import main


def _args(tmp_path, *extra):
    return [
        "--beta", "0.5", "--frame-length", "16", "--nt", "4", "--lg-target", "256",
        "--frames", "20", "--out", str(tmp_path), *extra,
    ]


def test_design_command_writes_files(tmp_path):
    result = CliRunner().invoke(main, ["design", *_args(tmp_path)])
    assert result.exit_code == 0, result.output
    assert os.path.exists(tmp_path / "spectrum_beta0p50.csv")
    assert os.path.exists(tmp_path / "pulse_beta0p50.csv")
    assert os.path.exists(tmp_path / "result_beta0p50.json")


def test_validate_command_reports_ok(tmp_path):
    result = CliRunner().invoke(main, ["validate", *_args(tmp_path)])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["ok"] is True


def test_fig_commands_write_csv(tmp_path):
    r = CliRunner().invoke(main, ["fig1", *_args(tmp_path)])
    assert r.exit_code == 0, r.output
    assert os.path.exists(tmp_path / "sacf_curves.csv")
    r = CliRunner().invoke(main, ["fig2", *_args(tmp_path)])
    assert r.exit_code == 0, r.output
    r = CliRunner().invoke(main, ["fig3", *_args(tmp_path)])
    assert r.exit_code == 0, r.output
    assert os.path.exists(tmp_path / "islr_vs_bitrate.csv")


def test_beta_and_sweep_are_mutually_exclusive(tmp_path):
    result = CliRunner().invoke(main, ["design", "--beta", "0.3", "--sweep",
                                       "--out", str(tmp_path)])
    assert result.exit_code == 2
    assert "mutually exclusive" in result.output


def test_empty_beta_list_in_config_is_usage_error(tmp_path):
    cfg = str(tmp_path / "cfg.json")
    serialize.write_json(cfg, {"betas": []})
    result = CliRunner().invoke(main, ["design", "--config", cfg, "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_unknown_config_key_is_usage_error(tmp_path):
    cfg = str(tmp_path / "cfg.json")
    serialize.write_json(cfg, {"betas": [0.5], "wat": 1})
    result = CliRunner().invoke(main, ["design", "--config", cfg, "--out", str(tmp_path)])
    assert result.exit_code == 2
    assert "unknown config keys" in result.output


def test_config_file_drives_run(tmp_path):
    cfg = str(tmp_path / "cfg.json")
    serialize.write_json(cfg, {
        "betas": [0.5], "frame_length": 16, "nt": 4, "lg_target": 256,
        "n_frames": 20, "out_dir": str(tmp_path),
    })
    result = CliRunner().invoke(main, ["design", "--config", cfg])
    assert result.exit_code == 0, result.output
    assert os.path.exists(tmp_path / "result_beta0p50.json")
