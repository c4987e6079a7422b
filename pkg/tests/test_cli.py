import csv
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from liericcati import AlgebraKind, CoefficientTriple, single_jump
from liericcati.cli import EVOLVE_COLUMNS, SWEEP_COLUMNS, main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def write(tmp_path, data, name="c.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def small_sweep(tmp_path, **kw):
    data = {"pulse": {"omega0": 10.0, "chi": 2.5, "mu": 2.0, "t0": 20.0}, "n_points": 5, "n_steps": 2000}
    data.update(kw)
    return write(tmp_path, data, "sweep.json")


def test_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--config", small_sweep(tmp_path), "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == SWEEP_COLUMNS and rows.shape == (5, 6)
    summary = capsys.readouterr().out
    assert summary.startswith("max_abs_error=") and "max_unitarity=" in summary


def test_sweep_tolerance_violation(tmp_path):
    cfg = small_sweep(tmp_path, n_steps=100, tolerance=1e-9)
    assert main(["sweep", "--config", cfg, "--out", str(tmp_path / "s.csv")]) == 1


def test_sweep_zero_steps_is_config_error(tmp_path):
    assert main(["sweep", "--config", small_sweep(tmp_path, n_steps=0)]) == 2


def test_missing_config_is_config_error(tmp_path):
    assert main(["sweep"]) == 2
    assert main(["sweep", "--config", str(tmp_path / "nope.json")]) == 2


def test_sweep_is_deterministic(tmp_path):
    cfg = small_sweep(tmp_path)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["sweep", "--config", cfg, "--out", str(a)])
    main(["--config", cfg, "--out", str(b), "sweep"])
    assert a.read_bytes() == b.read_bytes()


def test_sampling_flag_overrides_config(tmp_path):
    cfg = small_sweep(tmp_path)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["sweep", "--config", cfg, "--out", str(a)])
    main(["sweep", "--config", cfg, "--out", str(b), "--sampling", "endpoint"])
    assert a.read_bytes() != b.read_bytes()


def test_evolve_zero_drive(tmp_path):
    out = tmp_path / "e.csv"
    assert main(["evolve", "--config", str(CONFIGS / "evolve_zero.json"), "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == EVOLVE_COLUMNS
    assert np.all(rows[:, 1:] == 0)


def test_evolve_constant_final_row_matches_single_jump(tmp_path):
    cfg = write(tmp_path, {"algebra": "su2", "drive": {"type": "constant", "eta_plus": [0.7, -0.4], "center": 0.9},
                           "t_final": 2.0, "n_steps": 100})
    out = tmp_path / "e.csv"
    assert main(["evolve", "--config", cfg, "--out", str(out)]) == 0
    _, rows = read_csv(out)
    g = single_jump(CoefficientTriple(0.7 - 0.4j, 0.9, 0.7 + 0.4j), 2.0, AlgebraKind.SU2)
    last = rows[-1]
    assert abs(last[1] + 1j * last[2] - g.alpha) <= 1e-12
    assert abs(last[5] + 1j * last[6] - g.gamma) <= 1e-12


def test_evolve_sech_is_unitary(tmp_path):
    out = tmp_path / "e.csv"
    assert main(["evolve", "--config", str(CONFIGS / "evolve_sech.json"), "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert np.all(np.isfinite(rows))
    assert np.max(rows[:, 7:]) <= 1e-9


def test_factor_prints_both_orderings(tmp_path, capsys):
    assert main(["factor", "--config", str(CONFIGS / "factor_su2.json")]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["algebra"] == "su2"
    assert set(doc) == {"algebra", "normal", "antinormal"}
    assert doc["normal"]["plus"] == [0.12781015450806624, 0.17850971114286932]


@pytest.mark.parametrize("algebra", ["su2", "so21"])
def test_verify_passes(algebra, capsys):
    assert main(["verify", "--algebra", algebra, "--n", "1000", "--seed", "42"]) == 0
    assert "FAIL" not in capsys.readouterr().out


def test_verify_reports_violation(tmp_path, capsys):
    cfg = write(tmp_path, {"tolerances": {"associativity": 0.0}})
    assert main(["verify", "--config", cfg, "--n", "50"]) == 1
    assert "associativity" in capsys.readouterr().err


def test_invalid_algebra_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["verify", "--algebra", "so3"])
    assert info.value.code == 2


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "liericcati.cli", "verify", "--n", "10"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr


def test_solver_error_exit_code(tmp_path, monkeypatch):
    from liericcati import SingularComposition, cli

    def boom(_config):
        raise SingularComposition("composition denominator vanished", step=3)

    monkeypatch.setattr(cli, "sweep", boom)
    assert main(["sweep", "--config", small_sweep(tmp_path)]) == 3
