import json
from pathlib import Path

import pytest

import nlsplit.cli_io as cli_io
from nlsplit import ConfigParseError, ConstraintError, InvariantResult
from nlsplit.cli_io import cli_main, parse_config, parse_config_text, serialize_config, write_csv

MINIMAL = "dimension = 1\nsigma = 2\ntau_list = 0.0625\nt_final = 10\n"


def test_parse_minimal_config_fills_defaults():
    cfg = parse_config_text(MINIMAL)
    assert cfg.points == 4096
    assert cfg.half_width == 64.0
    assert cfg.datum == "gaussian"
    assert cfg.filter_enabled is True
    assert cfg.seed == 0
    assert cfg.reference_refinement == 16
    assert cfg.tau_list == (0.0625,)


def test_parse_long_horizon_grid_defaults():
    cfg = parse_config_text(MINIMAL.replace("t_final = 10", "t_final = 40"))
    assert cfg.points == 8192
    assert cfg.half_width == 128.0


def test_parse_rejects_bad_configs():
    with pytest.raises(ConstraintError) as err:
        parse_config_text("dimension = 2\nsigma = 0.5\ntau_list = 0.0625\nt_final = 10\n")
    assert "mass-critical" in str(err.value)
    with pytest.raises(ConstraintError) as err:
        parse_config_text(MINIMAL.replace("tau_list = 0.0625", "tau_list = 1.5"))
    assert "tau" in str(err.value)
    with pytest.raises(ConfigParseError) as err:
        parse_config_text(MINIMAL + "mystery_knob = 3\n")
    assert "mystery_knob" in str(err.value)
    with pytest.raises(ConfigParseError):
        parse_config_text("dimension 1\n")
    with pytest.raises(ConfigParseError):
        parse_config_text(MINIMAL + "sigma = 3\n")  # duplicate
    with pytest.raises(ConfigParseError):
        parse_config_text("sigma = 2\ntau_list = 0.0625\nt_final = 10\n")  # missing dimension
    with pytest.raises(ConfigParseError):
        parse_config_text(MINIMAL.replace("0.0625", "abc"))


def test_config_round_trip_identity():
    cfg = parse_config_text(
        "dimension = 1\npoints = 512\nhalf_width = 24.0\nsigma = 2.5\n"
        "tau_list = 0.125,0.0625\nt_final = 7.5\ndatum = rough_sobolev\nseed = 9\n"
        "filter = off\nreference_refinement = 8\ncheckpoint_stride = 4\nrough_exponent = 1.8\n"
    )
    assert parse_config_text(serialize_config(cfg)) == cfg


def test_comments_and_blank_lines():
    cfg = parse_config_text("# a comment\n\ndimension = 1 # trailing\nsigma = 2\ntau_list = 0.0625\nt_final = 10\n")
    assert cfg.dimension == 1


def test_write_csv_determinism_and_precision(tmp_path):
    path = tmp_path / "out.csv"
    rows = [[0.1, 3, 1.0 / 3.0], [0.05, 6, 2.0 / 7.0]]
    write_csv(path, ["tau", "n", "value"], rows)
    first = path.read_bytes()
    write_csv(path, ["tau", "n", "value"], rows)
    assert path.read_bytes() == first
    text = path.read_text()
    assert text.splitlines()[0] == "tau,n,value"
    assert repr(1.0 / 3.0) in text  # full round-trip precision
    # header-only file for an empty study
    write_csv(path, ["a", "b"], [])
    assert path.read_text() == "a,b\n"


def _write_cfg(tmp_path: Path, text: str) -> Path:
    p = tmp_path / "run.cfg"
    p.write_text(text)
    return p


def test_cli_single_run_happy_path(tmp_path, capsys):
    cfg = _write_cfg(
        tmp_path,
        "dimension = 1\npoints = 512\nhalf_width = 32.0\nsigma = 2\ntau_list = 0.25\nt_final = 1\n",
    )
    out = tmp_path / "out"
    code = cli_main(["single-run", "--config", str(cfg), "--out", str(out)])
    assert code == 0
    assert (out / "trajectory.csv").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert set(manifest["files"]) == {"trajectory.csv", "manifest.json"}
    header = (out / "trajectory.csv").read_text().splitlines()[0]
    assert header == "t,mass,energy,pseudoconf_total,j_norm_sq,l_r0_norm,compensated_decay"
    # config embedded in the manifest round-trips
    assert parse_config_text(manifest["config"]) == parse_config_text(cfg.read_text())


def test_cli_converge_writes_sorted_rows(tmp_path):
    cfg = _write_cfg(
        tmp_path,
        "dimension = 1\npoints = 512\nhalf_width = 32.0\nsigma = 2\n"
        "tau_list = 0.125,0.0625,0.03125,0.015625\nt_final = 1\n",
    )
    out = tmp_path / "conv"
    assert cli_main(["converge", "--config", str(cfg), "--out", str(out), "--quiet"]) == 0
    lines = (out / "convergence.csv").read_text().splitlines()
    assert lines[0] == "tau,n_steps,sup_error_l2,final_error_l2"
    taus = [float(line.split(",")[0]) for line in lines[1:]]
    assert taus == sorted(taus, reverse=True)
    # deterministic re-run: byte-identical CSV
    before = (out / "convergence.csv").read_bytes()
    assert cli_main(["converge", "--config", str(cfg), "--out", str(out), "--quiet"]) == 0
    assert (out / "convergence.csv").read_bytes() == before


def test_cli_error_exit_codes(tmp_path, monkeypatch):
    missing = cli_main(["converge"])
    assert missing == 1
    assert cli_main(["unknown-subcommand", "--config", "x"]) == 1
    bad = _write_cfg(tmp_path, "dimension = 2\nsigma = 0.5\ntau_list = 0.0625\nt_final = 10\n")
    assert cli_main(["single-run", "--config", str(bad), "--out", str(tmp_path / "o")]) == 1
    assert cli_main(["single-run", "--config", str(tmp_path / "nope.cfg")]) == 1
    # boundary leak: tiny box, strict guard via short horizon
    leak = _write_cfg(
        tmp_path,
        "dimension = 1\npoints = 256\nhalf_width = 8.0\nsigma = 2\ntau_list = 0.0625\nt_final = 4\n",
    )
    assert cli_main(["single-run", "--config", str(leak), "--out", str(tmp_path / "leak")]) == 2

    def fake_suite(cfg):
        return [InvariantResult(name="broken", measured=1.0, bound=0.5, passed=False)]

    monkeypatch.setattr(cli_io, "run_invariant_suite", fake_suite)
    good = _write_cfg(tmp_path, MINIMAL)
    code = cli_main(["invariants", "--config", str(good), "--out", str(tmp_path / "inv"), "--quiet"])
    assert code == 3
    lines = (tmp_path / "inv" / "invariants.csv").read_text().splitlines()
    assert lines[0] == "name,measured,bound,pass"
    assert lines[1].endswith("false")


def test_cli_help_exits_zero():
    assert cli_main(["--help"]) == 0
