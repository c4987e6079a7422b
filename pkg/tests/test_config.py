import json

import pytest

from liericcati import config as cfgmod
from liericcati.config import ConfigError, load

from pathlib import Path

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def write(tmp_path, data, name="c.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


@pytest.mark.parametrize("name, command", [
    ("fig1_mu1.4.json", "sweep"), ("fig1_mu2.json", "sweep"), ("fig1_mu4.json", "sweep"),
    ("evolve_sech.json", "evolve"), ("evolve_constant.json", "evolve"), ("evolve_zero.json", "evolve"),
    ("factor_su2.json", "factor"), ("verify_su2.json", "verify"),
])
def test_shipped_configs_load(name, command):
    cfg = load(CONFIGS / name, command)
    again = type(cfg).from_dict(json.loads(cfgmod.dumps(cfg)))
    assert again == cfg


def test_benchmark_sweep_parameters():
    cfg = load(CONFIGS / "fig1_mu1.4.json", "sweep")
    assert cfg.pulse.chi == pytest.approx(10 / 2.8)
    assert (cfg.n_points, cfg.n_steps, cfg.t_final) == (300, 8000, 40.0)


@pytest.mark.parametrize("data", [
    {"pulse": {"omega0": 10, "chi": 2.5, "mu": 2}, "n_steps": 0},
    {"pulse": {"omega0": 10, "chi": 2.5, "mu": 2}, "n_steps": 1.5},
    {"pulse": {"omega0": 10, "chi": 0, "mu": 2}},
    {"pulse": {"omega0": 10, "chi": 2.5}},
    {"pulse": {"omega0": 10, "chi": 2.5, "mu": 2}, "detunings": 3},
    {"pulse": {"omega0": 10, "chi": 2.5, "mu": 2}, "sampling": "left"},
    {"pulse": {"omega0": 10, "chi": 2.5, "mu": 2}, "detuning_min": 5, "detuning_max": -5},
    {"pulse": {"omega0": 10, "chi": 2.5, "mu": "two"}},
])
def test_bad_sweep_configs(tmp_path, data):
    with pytest.raises(ConfigError):
        load(write(tmp_path, data), "sweep")


@pytest.mark.parametrize("data", [
    {"drive": {"type": "constant"}, "t_final": 1, "n_steps": 10, "algebra": "so3"},
    {"drive": {"type": "wiggle"}, "t_final": 1, "n_steps": 10},
    {"drive": {"type": "constant", "pulse": {}}, "t_final": 1, "n_steps": 10},
    {"drive": {"type": "constant"}, "t_final": -1, "n_steps": 10},
    {"drive": {"type": "constant", "eta_plus": [1, 2, 3]}, "t_final": 1, "n_steps": 10},
])
def test_bad_evolve_configs(tmp_path, data):
    with pytest.raises(ConfigError):
        load(write(tmp_path, data), "evolve")


def test_complex_values_accept_pairs(tmp_path):
    cfg = load(write(tmp_path, {"lambda": {"plus": [0.1, 0.2], "center": 0.3, "minus": [0, -1]}}), "factor")
    assert (cfg.lam_plus, cfg.lam_center, cfg.lam_minus) == (0.1 + 0.2j, 0.3, -1j)


@pytest.mark.parametrize("data", [{"seed": -1}, {"seed": 2**64}, {"seed": True}, {"n_random": 0},
                                  {"tolerances": {"nonsense": 1}}])
def test_bad_verify_configs(tmp_path, data):
    with pytest.raises(ConfigError):
        load(write(tmp_path, data), "verify")


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigError):
        load(tmp_path / "missing.json", "sweep")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load(bad, "sweep")
