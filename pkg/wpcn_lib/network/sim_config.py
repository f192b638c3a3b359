#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Run configuration in SI units, converted once from the config dict."""
import json
import math
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional, Tuple

from enforce_typing import enforce_types

from wpcn_lib.example_config import validate_config
from wpcn_lib.exceptions import ConfigError
from wpcn_lib.units import (
    db_to_linear,
    dbm_to_watts,
    ghz_to_hz,
    kbps_to_bps,
    kbytes_to_bits,
    khz_to_hz,
    mj_to_joules,
    ms_to_seconds,
    mw_to_watts,
    uj_to_joules,
)

SCHEDULER_BACKENDS = ("auto", "exact", "greedy")
DELTA_RULES = ("tangent", "secant")


@enforce_types
@dataclass(frozen=True)
class SimConfig:
    slot_seconds: float
    V: float
    P_m: float
    P_APm: float
    A_m: float
    arrival_rates: Tuple[float, ...]
    W: float
    N0: float
    rician_K: float
    carrier_freq: float
    power_levels: int
    alpha: float
    fading_cap: float
    codeword_len: float
    block_err: float
    pilot_energy_h: float
    pilot_energy_g: float
    pilot_noise: float
    buffer_cap: float
    battery_cap: float
    seed: int
    horizon: int
    path_loss_exponent: float = 2.0
    warmup_fraction: float = 0.2
    scheduler: str = "auto"
    delta_rule: str = "tangent"
    V_relative: Optional[float] = None
    workers: int = 1
    channel_replay: Optional[str] = None

    def __post_init__(self):
        errors = {}
        if not self.alpha > 1:
            errors["policy.alpha"] = "must be > 1"
        if self.power_levels < 2:
            errors["policy.power_levels"] = "must be >= 2"
        if not 0 < self.block_err < 1:
            errors["physics.block_error"] = "must be in (0, 1)"
        if self.V < 0:
            errors["policy.V"] = "must be >= 0"
        if self.V_relative is not None and self.V_relative < 0:
            errors["policy.V_relative"] = "must be >= 0"
        if not self.fading_cap >= 1:
            errors["physics.fading_cap"] = "must be >= 1"
        if self.rician_K < 0:
            errors["physics.rician_k_db"] = "must give K >= 0"
        if not self.codeword_len >= 1:
            errors["physics.codeword_length"] = "must be >= 1"
        for name, value in (
            ("run.slot_ms", self.slot_seconds),
            ("policy.node_power_mw", self.P_m),
            ("policy.eap_power_w", self.P_APm),
            ("run.max_arrival_bits", self.A_m),
            ("physics.bandwidth_khz", self.W),
            ("physics.noise_psd_dbm_hz", self.N0),
            ("physics.carrier_ghz", self.carrier_freq),
            ("physics.pilot_energy_energy_link_uj", self.pilot_energy_h),
            ("physics.pilot_energy_data_link_uj", self.pilot_energy_g),
            ("physics.pilot_noise_dbm", self.pilot_noise),
            ("limits.buffer_cap_kbytes", self.buffer_cap),
            ("limits.battery_cap_mj", self.battery_cap),
            ("physics.path_loss_exponent", self.path_loss_exponent),
        ):
            if not value > 0:
                errors[name] = "must be positive"
        for s, rate in enumerate(self.arrival_rates):
            if rate < 0:
                errors[f"run.arrival_kbps[{s}]"] = "must be >= 0"
            elif rate * self.slot_seconds > self.A_m:
                errors[f"run.arrival_kbps[{s}]"] = "exceeds max_arrival_bits per slot"
        if self.horizon < 0:
            errors["run.horizon"] = "must be >= 0"
        if not 0 <= self.warmup_fraction < 1:
            errors["run.warmup_fraction"] = "must be in [0, 1)"
        if self.scheduler not in SCHEDULER_BACKENDS:
            errors["policy.scheduler"] = f"must be one of {', '.join(SCHEDULER_BACKENDS)}"
        if self.delta_rule not in DELTA_RULES:
            errors["policy.delta_rule"] = f"must be one of {', '.join(DELTA_RULES)}"
        if self.workers < 1:
            errors["run.workers"] = "must be >= 1"
        if errors:
            raise ConfigError(json.dumps(errors))

    @property
    def limited(self) -> bool:
        return math.isfinite(self.buffer_cap) or math.isfinite(self.battery_cap)

    @property
    def finite_blocklength(self) -> bool:
        return math.isfinite(self.codeword_len)

    @property
    def warmup_slots(self) -> int:
        return int(self.warmup_fraction * self.horizon)

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> "SimConfig":
        """Create a SimConfig from a validated nested config dict."""
        validate_config(config_dict)
        physics = config_dict["physics"]
        policy = config_dict["policy"]
        limits = config_dict["limits"]
        run = config_dict["run"]

        arrival = run["arrival_kbps"]
        if any(isinstance(a, bool) or not isinstance(a, (int, float)) for a in arrival):
            raise ConfigError(json.dumps({"run.arrival_kbps": "must be list of float"}))

        codeword = physics["codeword_length"]
        # null is pure scatter, K = 0 linear
        rician_db = physics["rician_k_db"]
        return cls(
            slot_seconds=ms_to_seconds(run["slot_ms"]),
            V=float(policy["V"]),
            P_m=mw_to_watts(policy["node_power_mw"]),
            P_APm=float(policy["eap_power_w"]),
            A_m=float(run["max_arrival_bits"]),
            arrival_rates=tuple(kbps_to_bps(a) for a in arrival),
            W=khz_to_hz(physics["bandwidth_khz"]),
            N0=dbm_to_watts(physics["noise_psd_dbm_hz"]),
            rician_K=0.0 if rician_db is None else db_to_linear(rician_db),
            carrier_freq=ghz_to_hz(physics["carrier_ghz"]),
            power_levels=policy["power_levels"],
            alpha=float(policy["alpha"]),
            fading_cap=float(physics["fading_cap"]),
            codeword_len=math.inf if codeword is None else float(codeword),
            block_err=float(physics["block_error"]),
            pilot_energy_h=uj_to_joules(physics["pilot_energy_energy_link_uj"]),
            pilot_energy_g=uj_to_joules(physics["pilot_energy_data_link_uj"]),
            pilot_noise=dbm_to_watts(physics["pilot_noise_dbm"]),
            buffer_cap=kbytes_to_bits(limits["buffer_cap_kbytes"]),
            battery_cap=mj_to_joules(limits["battery_cap_mj"]),
            seed=run["seed"],
            horizon=run["horizon"],
            path_loss_exponent=float(physics["path_loss_exponent"]),
            warmup_fraction=float(run["warmup_fraction"]),
            scheduler=policy["scheduler"],
            delta_rule=policy["delta_rule"],
            V_relative=None
            if policy["V_relative"] is None
            else float(policy["V_relative"]),
            workers=run["workers"],
            channel_replay=run["channel_replay"],
        )

    @enforce_types
    def with_overrides(self, **changes) -> "SimConfig":
        return replace(self, **changes)

    @enforce_types
    def as_dictionary(self) -> Dict[str, Any]:
        """SI-unit echo for summaries; infinities become None."""
        result = asdict(self)
        for key, value in result.items():
            if isinstance(value, float) and math.isinf(value):
                result[key] = None
        result["arrival_rates"] = list(self.arrival_rates)
        return result
