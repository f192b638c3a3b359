#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#

import copy
import json
import logging
import os
from pathlib import Path
from typing import Optional

import yaml

from wpcn_lib.exceptions import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_OUTPUT_DIR = "wpcn-output"
OUTPUT_DIR_ENV = "WPCN_OUTPUT_DIR"

# Values are in the units named by the key suffix; None means unlimited
# (caps, pilot energies, codeword length) or "take from the preset".
config_defaults = {
    "topology": {
        "preset": "fig2a",
        "hop_length_m": 4.0,
        "distance_scale": 1.0,
        "eap_antennas": 20,
        "node_count": None,
        "links": None,
        "streams": None,
        "eap_distances_m": None,
    },
    "physics": {
        "bandwidth_khz": 100.0,
        "noise_psd_dbm_hz": -135.0,
        "rician_k_db": 20.0,
        "carrier_ghz": 2.4,
        "path_loss_exponent": 2.0,
        "fading_cap": 10.0,
        "codeword_length": None,
        "block_error": 1e-10,
        "pilot_energy_energy_link_uj": None,
        "pilot_energy_data_link_uj": None,
        "pilot_noise_dbm": -90.0,
    },
    "policy": {
        "V": 1e11,
        "V_relative": None,
        "alpha": 2.0,
        "power_levels": 8,
        "node_power_mw": 1.0,
        "eap_power_w": 4.0,
        "scheduler": "auto",
        "delta_rule": "tangent",
    },
    "limits": {
        "buffer_cap_kbytes": None,
        "battery_cap_mj": None,
    },
    "run": {
        "slot_ms": 1.0,
        "horizon": 10000,
        "seed": 0,
        "arrival_kbps": [1.0, 1.0],
        "max_arrival_bits": 1000.0,
        "warmup_fraction": 0.2,
        "workers": 1,
        "channel_replay": None,
    },
}

_NUMBER = "number"
_OPT_NUMBER = "number or null"
_OPT_LIST = "list or null"
_OPT_STR = "str or null"

CONFIG_SCHEMA = {
    "topology": {
        "preset": _OPT_STR,
        "hop_length_m": _NUMBER,
        "distance_scale": _NUMBER,
        "eap_antennas": int,
        "node_count": "int or null",
        "links": _OPT_LIST,
        "streams": _OPT_LIST,
        "eap_distances_m": _OPT_LIST,
    },
    "physics": {
        "bandwidth_khz": _NUMBER,
        "noise_psd_dbm_hz": _NUMBER,
        "rician_k_db": _OPT_NUMBER,
        "carrier_ghz": _NUMBER,
        "path_loss_exponent": _NUMBER,
        "fading_cap": _NUMBER,
        "codeword_length": _OPT_NUMBER,
        "block_error": _NUMBER,
        "pilot_energy_energy_link_uj": _OPT_NUMBER,
        "pilot_energy_data_link_uj": _OPT_NUMBER,
        "pilot_noise_dbm": _NUMBER,
    },
    "policy": {
        "V": _NUMBER,
        "V_relative": _OPT_NUMBER,
        "alpha": _NUMBER,
        "power_levels": int,
        "node_power_mw": _NUMBER,
        "eap_power_w": _NUMBER,
        "scheduler": str,
        "delta_rule": str,
    },
    "limits": {
        "buffer_cap_kbytes": _OPT_NUMBER,
        "battery_cap_mj": _OPT_NUMBER,
    },
    "run": {
        "slot_ms": _NUMBER,
        "horizon": int,
        "seed": int,
        "arrival_kbps": list,
        "max_arrival_bits": _NUMBER,
        "warmup_fraction": _NUMBER,
        "workers": int,
        "channel_replay": _OPT_STR,
    },
}

# Scenario overrides layered on config_defaults, one per experiment family.
# The figure scenarios all use the secant delta rule.
PRESET_OVERRIDES = {
    "default": {},
    "fig4-tradeoff": {
        "policy": {"V": 1e10, "delta_rule": "secant"},
        "run": {"horizon": 100000, "arrival_kbps": [1.0, 1.0]},
    },
    "fig5-samplepath": {
        "physics": {"rician_k_db": 0.0},
        "policy": {"V": 3e11, "delta_rule": "secant"},
        "run": {"horizon": 100000, "arrival_kbps": [5.0, 5.0]},
    },
    "fig6-flow": {
        "policy": {"V": 1e11, "delta_rule": "secant"},
        "run": {"horizon": 100000, "arrival_kbps": [2.0, 2.0]},
    },
    "fig7-csi": {
        "physics": {"rician_k_db": 10.0, "pilot_energy_data_link_uj": 10.0},
        "policy": {"V": 3e11, "delta_rule": "secant"},
        "run": {"horizon": 100000, "arrival_kbps": [1.0, 1.0]},
    },
    "fig8-droprate": {
        "physics": {"rician_k_db": 0.0},
        "policy": {"V": 3e11, "delta_rule": "secant"},
        "limits": {"buffer_cap_kbytes": 200.0, "battery_cap_mj": 0.8},
        "run": {"horizon": 100000, "arrival_kbps": [5.0, 5.0]},
    },
    "fig9-capacity": {
        "policy": {"V": 1e11, "delta_rule": "secant"},
        "run": {"horizon": 100000, "arrival_kbps": [1.0, 1.0]},
    },
    "fig10-blocklength": {
        "physics": {"codeword_length": 200.0},
        "policy": {"V": 3e11, "delta_rule": "secant"},
        "run": {"horizon": 100000, "arrival_kbps": [0.5, 0.5]},
    },
}


def _merge(base: dict, overrides: dict, path: str, errors: dict) -> None:
    for key, value in overrides.items():
        dotted = f"{path}.{key}" if path else key
        if key not in base:
            errors[dotted] = "unknown key"
            continue
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                errors[dotted] = "must be dict"
                continue
            _merge(base[key], value, dotted, errors)
        else:
            base[key] = copy.deepcopy(value)


def _type_error(expected, value) -> Optional[str]:
    is_number = isinstance(value, (int, float)) and not isinstance(value, bool)
    if expected == _NUMBER:
        return None if is_number else "must be float"
    if expected == _OPT_NUMBER:
        return None if value is None or is_number else "must be float or null"
    if expected == _OPT_LIST:
        return None if value is None or isinstance(value, list) else "must be list"
    if expected == _OPT_STR:
        return None if value is None or isinstance(value, str) else "must be str"
    if expected == "int or null":
        ok = value is None or (isinstance(value, int) and not isinstance(value, bool))
        return None if ok else "must be int or null"
    if expected is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
        return None if ok else "must be int"
    if not isinstance(value, expected):
        return f"must be {expected.__name__}"
    return None


def validate_config(config_dict: dict) -> None:
    """Check section/key names and value types; raise ConfigError listing all problems."""
    config_errors = {}
    for section, fields in CONFIG_SCHEMA.items():
        if section not in config_dict:
            config_errors[section] = "required"
            continue
        if not isinstance(config_dict[section], dict):
            config_errors[section] = "must be dict"
            continue
        for key in config_dict[section]:
            if key not in fields:
                config_errors[f"{section}.{key}"] = "unknown key"
        for key, expected in fields.items():
            if key not in config_dict[section]:
                config_errors[f"{section}.{key}"] = "required"
                continue
            problem = _type_error(expected, config_dict[section][key])
            if problem:
                config_errors[f"{section}.{key}"] = problem

    for section in config_dict:
        if section not in CONFIG_SCHEMA:
            config_errors[section] = "unknown key"

    if config_errors:
        raise ConfigError(json.dumps(config_errors))


def get_config_dict(preset_name: Optional[str] = None, overrides: Optional[dict] = None) -> dict:
    """Return config dict containing default values for a given preset,
    with `overrides` (a partial nested dict) applied on top.
    """
    if not preset_name:
        preset_name = "default"

    if preset_name not in PRESET_OVERRIDES:
        raise ConfigError(json.dumps({"preset": f"unknown preset {preset_name}"}))

    config_dict = copy.deepcopy(config_defaults)
    errors = {}
    _merge(config_dict, PRESET_OVERRIDES[preset_name], "", errors)
    if overrides:
        _merge(config_dict, overrides, "", errors)
    if errors:
        raise ConfigError(json.dumps(errors))

    validate_config(config_dict)
    return config_dict


def load_config_file(path: str) -> dict:
    """Read a JSON or YAML config file and layer it on the defaults.

    A top-level "extends" key names the preset the file builds on.
    """
    file_path = Path(path).expanduser()
    if not file_path.exists():
        raise ConfigError(json.dumps({"config": f"file not found: {path}"}))

    text = file_path.read_text(encoding="utf8")
    try:
        if file_path.suffix in (".yaml", ".yml"):
            raw = yaml.safe_load(text) or {}
        else:
            raw = json.loads(text)
    except (ValueError, yaml.YAMLError) as e:
        raise ConfigError(json.dumps({"config": f"unparseable: {e}"}))

    if not isinstance(raw, dict):
        raise ConfigError(json.dumps({"config": "must be dict"}))

    raw = copy.deepcopy(raw)
    preset_name = raw.pop("extends", None)
    return get_config_dict(preset_name, raw)


def set_dotted(config_dict: dict, dotted_path: str, value) -> dict:
    """Return a copy of config_dict with `section.key` set to value."""
    parts = dotted_path.split(".")
    if len(parts) != 2:
        raise ConfigError(json.dumps({dotted_path: "must be section.key"}))
    updated = copy.deepcopy(config_dict)
    errors = {}
    _merge(updated, {parts[0]: {parts[1]: value}}, "", errors)
    if errors:
        raise ConfigError(json.dumps(errors))
    validate_config(updated)
    return updated


def default_output_dir() -> str:
    return os.getenv(OUTPUT_DIR_ENV, DEFAULT_OUTPUT_DIR)
