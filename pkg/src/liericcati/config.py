"""JSON run configurations for the command-line tool.

Each subcommand has its own dataclass.  ``from_dict`` rejects unknown keys
and out-of-range values with :class:`ConfigError`; ``to_dict`` is its exact
inverse so configs round-trip.  Complex numbers are written either as plain
numbers or as ``[real, imag]`` pairs.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .algebra import AlgebraKind
from .propagator import SAMPLING_MODES


class ConfigError(ValueError):
    pass


def _complex(value, name):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"{name}: complex values are [real, imag] pairs")
        value = complex(_real(value[0], name), _real(value[1], name))
    elif isinstance(value, (int, float)) and not isinstance(value, bool):
        value = complex(value)
    else:
        raise ConfigError(f"{name}: expected a number or [real, imag], got {value!r}")
    return value


def _real(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{name}: must be finite")
    return float(value)


def _positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConfigError(f"{name}: expected a positive integer, got {value!r}")
    return value


def _check_keys(data, allowed, where):
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected a JSON object")
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise ConfigError(f"{where}: unknown keys {unknown}")


def _require(data, keys, where):
    missing = [k for k in keys if k not in data]
    if missing:
        raise ConfigError(f"{where}: missing keys {missing}")


def _sampling(value):
    if value not in SAMPLING_MODES:
        raise ConfigError(f"sampling must be one of {SAMPLING_MODES}, got {value!r}")
    return value


def _algebra(value):
    try:
        return AlgebraKind.parse(value).value
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _pair(z: complex):
    return [z.real, z.imag]


@dataclass(frozen=True)
class PulseConfig:
    omega0: float
    chi: float
    mu: float
    t0: float = 20.0

    @classmethod
    def from_dict(cls, data, where="pulse"):
        _check_keys(data, [f.name for f in fields(cls)], where)
        _require(data, ["omega0", "chi", "mu"], where)
        cfg = cls(**{k: _real(v, f"{where}.{k}") for k, v in data.items()})
        if cfg.chi <= 0:
            raise ConfigError(f"{where}.chi must be positive")
        if cfg.omega0 < 0:
            raise ConfigError(f"{where}.omega0 must be non-negative")
        return cfg

    def build(self):
        from .bloch import SechPulse

        return SechPulse(self.omega0, self.chi, self.mu, self.t0)


@dataclass(frozen=True)
class SweepRunConfig:
    pulse: PulseConfig
    detuning_min: float = -15.0
    detuning_max: float = 15.0
    n_points: int = 300
    t_final: float = 40.0
    n_steps: int = 8000
    sampling: str = "midpoint"
    tolerance: float = 5e-3
    output: str | None = None

    @classmethod
    def from_dict(cls, data):
        _check_keys(data, [f.name for f in fields(cls)], "sweep config")
        _require(data, ["pulse"], "sweep config")
        kw = {"pulse": PulseConfig.from_dict(data["pulse"])}
        for key in ("detuning_min", "detuning_max", "t_final", "tolerance"):
            if key in data:
                kw[key] = _real(data[key], key)
        for key in ("n_points", "n_steps"):
            if key in data:
                kw[key] = _positive_int(data[key], key)
        if "sampling" in data:
            kw["sampling"] = _sampling(data["sampling"])
        if "output" in data:
            kw["output"] = None if data["output"] is None else str(data["output"])
        cfg = cls(**kw)
        if cfg.t_final <= 0:
            raise ConfigError("t_final must be positive")
        if cfg.detuning_max < cfg.detuning_min:
            raise ConfigError("detuning_max must not be below detuning_min")
        if cfg.tolerance < 0:
            raise ConfigError("tolerance must be non-negative")
        return cfg

    def to_dict(self):
        return asdict(self)

    def build(self, sampling=None):
        from .bloch import SweepConfig

        return SweepConfig(self.pulse.build(), self.detuning_min, self.detuning_max, self.n_points,
                           self.t_final, self.n_steps, sampling or self.sampling)


@dataclass(frozen=True)
class DriveConfig:
    """``type`` is ``constant`` (``eta_plus``, ``center``) or ``sech`` (pulse plus ``detuning``)."""

    type: str
    eta_plus: complex = 0j
    center: float = 0.0
    pulse: PulseConfig | None = None
    detuning: float = 0.0

    @classmethod
    def from_dict(cls, data, where="drive"):
        _check_keys(data, [f.name for f in fields(cls)], where)
        _require(data, ["type"], where)
        kind = data["type"]
        if kind == "constant":
            _check_keys(data, ["type", "eta_plus", "center"], where)
            return cls("constant", _complex(data.get("eta_plus", 0.0), f"{where}.eta_plus"),
                       _real(data.get("center", 0.0), f"{where}.center"))
        if kind == "sech":
            _check_keys(data, ["type", "pulse", "detuning"], where)
            _require(data, ["pulse"], where)
            return cls("sech", pulse=PulseConfig.from_dict(data["pulse"], f"{where}.pulse"),
                       detuning=_real(data.get("detuning", 0.0), f"{where}.detuning"))
        raise ConfigError(f"{where}.type must be 'constant' or 'sech', got {kind!r}")

    def to_dict(self):
        if self.type == "constant":
            return {"type": "constant", "eta_plus": _pair(self.eta_plus), "center": self.center}
        return {"type": "sech", "pulse": asdict(self.pulse), "detuning": self.detuning}

    def build(self, kind):
        from .bloch import sech_pulse_value
        from .propagator import Drive

        kind = AlgebraKind.parse(kind)
        if self.type == "constant":
            return Drive.constant(self.eta_plus, self.center, kind)
        pulse = self.pulse.build()
        detuning = self.detuning
        return Drive(lambda t: sech_pulse_value(pulse, t) / 2,
                     lambda t: np.full(np.shape(t), detuning), kind)


@dataclass(frozen=True)
class EvolveRunConfig:
    drive: DriveConfig
    t_final: float
    n_steps: int
    algebra: str = "su2"
    sampling: str = "midpoint"
    unitarity_tolerance: float | None = None
    output: str | None = None

    @classmethod
    def from_dict(cls, data):
        _check_keys(data, [f.name for f in fields(cls)], "evolve config")
        _require(data, ["drive", "t_final", "n_steps"], "evolve config")
        kw = {
            "drive": DriveConfig.from_dict(data["drive"]),
            "t_final": _real(data["t_final"], "t_final"),
            "n_steps": _positive_int(data["n_steps"], "n_steps"),
        }
        if "algebra" in data:
            kw["algebra"] = _algebra(data["algebra"])
        if "sampling" in data:
            kw["sampling"] = _sampling(data["sampling"])
        if data.get("unitarity_tolerance") is not None:
            kw["unitarity_tolerance"] = _real(data["unitarity_tolerance"], "unitarity_tolerance")
        if "output" in data:
            kw["output"] = None if data["output"] is None else str(data["output"])
        cfg = cls(**kw)
        if cfg.t_final <= 0:
            raise ConfigError("t_final must be positive")
        return cfg

    def to_dict(self):
        d = asdict(self)
        d["drive"] = self.drive.to_dict()
        return d


@dataclass(frozen=True)
class FactorRunConfig:
    lam_plus: complex
    lam_center: complex
    lam_minus: complex
    algebra: str = "su2"
    output: str | None = None

    @classmethod
    def from_dict(cls, data):
        _check_keys(data, ["algebra", "lambda", "output"], "factor config")
        _require(data, ["lambda"], "factor config")
        lam = data["lambda"]
        _check_keys(lam, ["plus", "center", "minus"], "lambda")
        _require(lam, ["plus", "center", "minus"], "lambda")
        return cls(
            _complex(lam["plus"], "lambda.plus"),
            _complex(lam["center"], "lambda.center"),
            _complex(lam["minus"], "lambda.minus"),
            _algebra(data.get("algebra", "su2")),
            None if data.get("output") is None else str(data["output"]),
        )

    def to_dict(self):
        return {
            "algebra": self.algebra,
            "lambda": {"plus": _pair(self.lam_plus), "center": _pair(self.lam_center),
                       "minus": _pair(self.lam_minus)},
            "output": self.output,
        }


@dataclass(frozen=True)
class VerifyRunConfig:
    algebra: str = "su2"
    n_random: int = 1000
    seed: int = 0
    tolerances: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data):
        from .verification import DEFAULT_TOLERANCES

        _check_keys(data, [f.name for f in fields(cls)], "verify config")
        kw = {}
        if "algebra" in data:
            kw["algebra"] = _algebra(data["algebra"])
        if "n_random" in data:
            kw["n_random"] = _positive_int(data["n_random"], "n_random")
        if "seed" in data:
            seed = data["seed"]
            if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
                raise ConfigError("seed must be an unsigned 64-bit integer")
            kw["seed"] = seed
        if "tolerances" in data:
            _check_keys(data["tolerances"], DEFAULT_TOLERANCES, "tolerances")
            kw["tolerances"] = {k: _real(v, f"tolerances.{k}") for k, v in data["tolerances"].items()}
        return cls(**kw)

    def to_dict(self):
        return asdict(self)


COMMAND_CONFIGS = {
    "sweep": SweepRunConfig,
    "evolve": EvolveRunConfig,
    "factor": FactorRunConfig,
    "verify": VerifyRunConfig,
}


def load(path, command):
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from None
    return COMMAND_CONFIGS[command].from_dict(data)


def dumps(config) -> str:
    return json.dumps(config.to_dict(), indent=2, sort_keys=True)
