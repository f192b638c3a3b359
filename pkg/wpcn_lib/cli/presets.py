#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Named experiment scenarios: a base config plus an optional sweep grid."""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from wpcn_lib.engine.sweep import sweep_points
from wpcn_lib.example_config import get_config_dict
from wpcn_lib.exceptions import ConfigError


@dataclass
class Preset:
    name: str
    config_dict: Dict[str, Any]
    axes: Dict[str, list] = field(default_factory=dict)  # dotted path -> values
    runs: int = 1
    description: str = ""

    @property
    def has_sweep(self) -> bool:
        return bool(self.axes)

    def validate(self) -> None:
        """Every grid point must pass the config schema."""
        if self.axes:
            sweep_points(self.config_dict, self.axes)


def _per_stream(rates: List[float]) -> List[List[float]]:
    return [[rate, rate] for rate in rates]


_TRADEOFF_V = [float(v) for v in np.logspace(9.0, np.log10(3e11), 7)]

_PILOT_UJ = [float(p) for p in np.logspace(0.0, 7.0, 15)]


def _pilot_cases(energies: List[float]) -> List[List[Optional[float]]]:
    """[data-link, energy-link] pilot pairs: data link only, energy link only, both."""
    cases: List[List[Optional[float]]] = []
    for energy in energies:
        cases += [[energy, None], [None, energy], [energy, energy]]
    return cases


_DEFINITIONS = [
    (
        "fig4-tradeoff",
        {
            "topology.eap_antennas": [20, 40],
            "run.arrival_kbps": _per_stream([1.0, 3.0, 5.0]),
            "policy.V": _TRADEOFF_V,
        },
        5,
        "Energy/backlog tradeoff over V for three arrival rates and two antenna counts",
    ),
    (
        "fig5-samplepath",
        {},
        1,
        "Single long run for queue and battery sample paths around their attraction points",
    ),
    (
        "fig6-flow",
        {},
        1,
        "Single run for per-link flow on the preset topology",
    ),
    (
        "fig7-csi",
        {
            "physics.rician_k_db": [5.0, 10.0, 20.0],
            "physics.pilot_energy_data_link_uj+physics.pilot_energy_energy_link_uj": _pilot_cases(
                _PILOT_UJ
            ),
        },
        3,
        "Imperfect CSI: energy against pilot energy per K for data-link, energy-link and both",
    ),
    (
        "fig8-droprate",
        {
            "limits.buffer_cap_kbytes": [25.0, 50.0, 100.0, 200.0, 400.0],
            "limits.battery_cap_mj": [0.4, 0.8, 1.2],
        },
        3,
        "Drop fraction over buffer and battery capacities",
    ),
    (
        "fig9-capacity",
        {
            "policy.eap_power_w": [3.0, 4.0, 5.0],
            "run.arrival_kbps": _per_stream([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]),
        },
        3,
        "Backlog/arrival ratio against arrival rate for three E-AP powers",
    ),
    (
        "fig10-blocklength",
        {
            "topology.distance_scale": [1.0, 1.1, 1.2],
            "physics.codeword_length": [100.0, 150.0, 200.0, 300.0, 500.0, 1000.0, 2000.0, None],
        },
        3,
        "Finite-blocklength penalty: energy against codeword length for scaled distances",
    ),
]

PRESETS: Dict[str, Preset] = {
    name: Preset(
        name=name,
        config_dict=get_config_dict(name),
        axes=axes,
        runs=runs,
        description=description,
    )
    for name, axes, runs, description in _DEFINITIONS
}


def get_preset(name: Optional[str]) -> Preset:
    if name not in PRESETS:
        raise ConfigError(
            json.dumps({"preset": f"unknown preset {name}; choose from {sorted(PRESETS)}"})
        )
    return PRESETS[name]


def _scalar(raw: str):
    try:
        return json.loads(raw)
    except ValueError:
        return raw


def parse_axis(text: str) -> Dict[str, list]:
    """Parse `section.key=v1,v2,...`.

    The value list is read as JSON when it parses (so `[1,1],[3,3]` gives two
    lists); otherwise each comma-separated word is JSON or a bare string.
    """
    if "=" not in text:
        raise ConfigError(json.dumps({"axis": f"expected section.key=v1,v2: {text}"}))
    path, raw_values = text.split("=", 1)
    try:
        values = json.loads(f"[{raw_values}]")
    except ValueError:
        values = [_scalar(raw.strip()) for raw in raw_values.split(",") if raw.strip()]
    if not values:
        raise ConfigError(json.dumps({path: "axis must be nonempty"}))
    return {path.strip(): values}
