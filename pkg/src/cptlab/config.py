"""Strict typed key-value configuration and the built-in figure presets.

A config file is INI-style with one section per command::

    [spectrum]
    preset = fig3a
    gamma = 7
    tau2 = inf, 100

Values from a preset are applied first and explicit keys override them.
Unknown sections or keys are errors.
"""

from __future__ import annotations

import configparser
import math

from .errors import ConfigError, DomainError
from .model import SystemParams


def _float(text):
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None
    if math.isnan(value):
        raise ConfigError("NaN is not allowed")
    return value


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"not an integer: {text!r}") from None


def _bool(text):
    key = str(text).strip().lower()
    if key in ("1", "true", "yes", "on"):
        return True
    if key in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _floats(text):
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    return [_float(p) for p in parts]


def _str(text):
    return str(text).strip()


SYSTEM_KEYS = {
    "gamma": _float, "omega1": _float, "omega2": _float, "phi1": _float,
    "phi2": _float, "delta1": _float, "delta2": _float, "gamma_e": _float,
}

SCHEMAS = {
    "dynamics": {
        **SYSTEM_KEYS,
        "preset": _str, "tau_c": _floats, "gamma_e_c0": _float, "t_end": _float,
        "n_points": _int, "rtol": _float, "atol": _float, "initial_state": _str,
        "smooth_window": _int, "backend": _str,
    },
    "spectrum": {
        **SYSTEM_KEYS,
        "preset": _str, "mode": _str, "tau2": _floats, "delta_min": _float,
        "delta_max": _float, "n_delta": _int, "tau2_min": _float, "tau2_max": _float,
        "n_tau2": _int,
    },
    "estimate": {
        **SYSTEM_KEYS,
        "preset": _str, "measured_p00": _float, "tau2_lo": _float, "tau2_hi": _float,
        "rel_tol": _float, "tau_c": _float,
    },
    "fidelity": {
        "preset": _str, "sweep": _str, "gamma": _float, "omega2": _float, "ratio": _float,
        "tau2": _float, "grid_min": _float, "grid_max": _float, "n_grid": _int,
        "log_grid": _bool, "threshold_defect": _float, "target_fidelity": _float,
        "report_tau2": _float,
    },
}

DEFAULTS = {
    "dynamics": {
        "phi1": 0.0, "phi2": 0.0, "delta1": 0.0, "delta2": 0.0, "gamma_e": 1.0,
        "gamma_e_c0": 1.0, "t_end": 2.0, "n_points": 2000, "rtol": 1e-9, "atol": 1e-12,
        "initial_state": "1", "smooth_window": 1, "backend": "",
    },
    "spectrum": {
        "phi1": 0.0, "phi2": 0.0, "delta1": 0.0, "delta2": 0.0, "gamma_e": 1.0,
        "mode": "spectrum", "tau2": [math.inf], "delta_min": -100.0, "delta_max": 100.0,
        "n_delta": 401, "tau2_min": 0.1, "tau2_max": 1000.0, "n_tau2": 81,
    },
    "estimate": {
        "phi1": 0.0, "phi2": 0.0, "delta1": 0.0, "delta2": 0.0, "gamma_e": 1.0,
        "tau2_lo": 0.1, "tau2_hi": 1e4, "rel_tol": 1e-6,
    },
    "fidelity": {
        "gamma": 1.0, "omega2": 10.0, "ratio": 1.0, "tau2": 300.0, "log_grid": True,
        "threshold_defect": 1e-3, "target_fidelity": 0.98, "report_tau2": 300.0,
    },
}

_FIG3 = {"gamma": 7.0, "omega1": 46.0, "omega2": 46.0}

PRESETS = {
    "dynamics": {
        "fig2": {**_FIG3, "tau_c": [0.01, 5.0], "gamma_e_c0": 1.0, "t_end": 2.0,
                 "n_points": 2000, "initial_state": "1"},
    },
    "spectrum": {
        "fig3a": {**_FIG3, "mode": "spectrum", "tau2": [math.inf, 100.0, 10.0, 1.0],
                  "delta_min": -100.0, "delta_max": 100.0, "n_delta": 401},
        "fig3b": {**_FIG3, "mode": "dip_curve", "tau2_min": 0.1, "tau2_max": 1000.0,
                  "n_tau2": 81},
    },
    "estimate": {
        "fig3b": dict(_FIG3),
    },
    "fidelity": {
        "fig4a": {"sweep": "ratio", "gamma": 1.0, "omega2": 10.0, "tau2": 300.0,
                  "grid_min": 0.01, "grid_max": 100.0, "n_grid": 81, "log_grid": True},
        "fig4b": {"sweep": "omega2", "gamma": 1.0, "ratio": 1.0, "tau2": 300.0,
                  "grid_min": 1.0, "grid_max": 100.0, "n_grid": 100, "log_grid": False},
        "fig4c": {"sweep": "tau2", "gamma": 1.0, "ratio": 1.0, "omega2": 10.0,
                  "grid_min": 10.0, "grid_max": 1000.0, "n_grid": 61, "log_grid": True},
    },
}

REQUIRED = {
    "dynamics": ("gamma", "omega1", "omega2", "tau_c"),
    "spectrum": ("gamma", "omega1", "omega2"),
    "estimate": ("gamma", "omega1", "omega2", "measured_p00"),
    "fidelity": ("sweep", "grid_min", "grid_max", "n_grid"),
}


def parse_text(text: str) -> dict:
    """Parse INI text into ``{section: {key: raw string}}``."""
    parser = configparser.ConfigParser(interpolation=None, strict=True)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    return {s: dict(parser.items(s)) for s in parser.sections()}


def resolve(command: str, raw: dict | None = None, preset: str | None = None) -> dict:
    """Merge defaults, preset and explicit keys for ``command`` and type-check them."""
    if command not in SCHEMAS:
        raise ConfigError(f"unknown command {command!r}")
    raw = raw or {}
    unknown_sections = set(raw) - {command}
    if unknown_sections:
        raise ConfigError(f"config sections {sorted(unknown_sections)} do not apply to '{command}'")
    section = raw.get(command, {})
    schema = SCHEMAS[command]
    unknown = set(section) - set(schema)
    if unknown:
        raise ConfigError(f"unknown keys in [{command}]: {sorted(unknown)}")
    typed = {key: schema[key](value) for key, value in section.items()}

    name = preset or typed.get("preset")
    values = dict(DEFAULTS[command])
    if name:
        try:
            values.update(PRESETS[command][name])
        except KeyError:
            raise ConfigError(
                f"unknown preset {name!r} for {command}; available: {sorted(PRESETS[command])}"
            ) from None
        values["preset"] = name
    values.update({k: v for k, v in typed.items() if k != "preset"})

    missing = [k for k in REQUIRED[command] if k not in values]
    if missing:
        raise ConfigError(f"missing keys in [{command}]: {missing}")
    _validate(command, values)
    return values


def load(command: str, path=None, preset: str | None = None) -> dict:
    raw = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                raw = parse_text(fh.read())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
    return resolve(command, raw, preset)


def system_params(values: dict) -> SystemParams:
    try:
        return SystemParams(**{k: values[k] for k in SYSTEM_KEYS if k in values})
    except (DomainError, TypeError) as exc:
        raise ConfigError(f"invalid system parameters: {exc}") from None


def _positive(values, *keys):
    for key in keys:
        if key in values and not values[key] > 0:
            raise ConfigError(f"{key} must be positive, got {values[key]!r}")


def _validate(command, v):
    if command != "fidelity":
        system_params(v)
    if command == "dynamics":
        if v["n_points"] < 1:
            raise ConfigError("n_points must be >= 1 (empty output grid)")
        if not v["tau_c"]:
            raise ConfigError("tau_c must list at least one bath")
        if any(t <= 0 for t in v["tau_c"]):
            raise ConfigError("tau_c values must be positive")
        _positive(v, "t_end", "rtol", "atol", "gamma_e", "smooth_window")
        if v["gamma_e_c0"] < 0:
            raise ConfigError("gamma_e_c0 must be non-negative")
        if v["backend"] not in ("", "python", "cython"):
            raise ConfigError(f"unknown backend {v['backend']!r}")
    elif command == "spectrum":
        if v["mode"] not in ("spectrum", "dip_curve"):
            raise ConfigError(f"mode must be 'spectrum' or 'dip_curve', got {v['mode']!r}")
        _positive(v, "gamma", "n_delta", "n_tau2", "tau2_min", "tau2_max")
        if not v["tau2"] or any(t <= 0 for t in v["tau2"]):
            raise ConfigError("tau2 values must be positive (use inf for noiseless)")
        if v["delta_max"] < v["delta_min"] or v["tau2_max"] <= v["tau2_min"]:
            raise ConfigError("grid bounds are reversed")
    elif command == "estimate":
        _positive(v, "gamma", "rel_tol", "tau2_lo", "tau2_hi", "gamma_e")
        if "tau_c" in v:
            _positive(v, "tau_c")
        if v["tau2_hi"] <= v["tau2_lo"]:
            raise ConfigError("tau2_hi must exceed tau2_lo")
    elif command == "fidelity":
        if v["sweep"] not in ("ratio", "omega2", "tau2"):
            raise ConfigError(f"sweep must be ratio, omega2 or tau2, got {v['sweep']!r}")
        _positive(v, "gamma", "omega2", "ratio", "tau2", "grid_min", "grid_max", "n_grid",
                  "threshold_defect", "report_tau2")
        if v["grid_max"] < v["grid_min"]:
            raise ConfigError("grid bounds are reversed")
