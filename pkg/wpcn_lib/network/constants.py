#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Policy constants derived from the configuration and the topology:
    the rate-power slope bound delta, the energy-to-data conversion factor C,
    the per-slot flow bounds mu_max and phi_max, and the dummy backlog U0.
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.channel.path_loss import topology_path_losses
from wpcn_lib.exceptions import ConstantsError
from wpcn_lib.network.sim_config import SimConfig
from wpcn_lib.network.topology import Topology
from wpcn_lib.rate.rate_model import RateModel, power_levels
from wpcn_lib.units import str_with_bits

logger = logging.getLogger(__name__)

GRID_PAIRS = 1000
GRID_SEED = 0
SLOPE_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class DerivedConstants:
    delta: float
    C: float
    U0: float
    mu_max: float
    phi_max: float
    alpha: float
    g_cap: np.ndarray
    h_cap: np.ndarray
    beta_g: np.ndarray
    beta_h: np.ndarray

    def as_dictionary(self) -> Dict[str, Any]:
        return {
            "delta": self.delta,
            "C": self.C,
            "U0": self.U0,
            "mu_max": self.mu_max,
            "phi_max": self.phi_max,
            "alpha": self.alpha,
            "g_cap": self.g_cap.tolist(),
            "h_cap": self.h_cap.tolist(),
        }


@enforce_types
def conversion_factor(delta: float, alpha: float) -> float:
    """C = 2 delta / (1 - 1/alpha)."""
    if not alpha > 1:
        raise ConstantsError(f"alpha must be > 1, got {alpha}")
    return 2.0 * delta / (1.0 - 1.0 / alpha)


@enforce_types
def dummy_backlog(phi_max: float, C: float, alpha: float, delta: float, mu_max: float) -> float:
    """U0 = max{phi_max (C + alpha delta), mu_max}."""
    return max(phi_max * (C + alpha * delta), mu_max)


def _check_slope_grid(
    cfg: SimConfig, rate_model: RateModel, g_cap: np.ndarray, delta: float, levels: np.ndarray
) -> None:
    """Random-pair check that no admissible rate slope exceeds delta."""
    if not len(g_cap):
        return
    rng = np.random.default_rng(GRID_SEED)
    links = rng.integers(0, len(g_cap), GRID_PAIRS)
    gains = rng.uniform(0.0, 1.0, GRID_PAIRS) * g_cap[links]

    if cfg.delta_rule == "tangent":
        powers = rng.uniform(0.0, cfg.P_m, GRID_PAIRS)
        eps = cfg.P_m * 1e-9
        slopes = (rate_model.rate(powers + eps, gains) - rate_model.rate(powers, gains)) / eps
    else:
        j, k = np.triu_indices(len(levels), k=1)
        pick = rng.integers(0, len(j), GRID_PAIRS)
        lo, hi = levels[j[pick]], levels[k[pick]]
        slopes = (rate_model.rate(hi, gains) - rate_model.rate(lo, gains)) / (hi - lo)

    if not np.all(np.isfinite(slopes)):
        raise ConstantsError("Non-finite rate slope on the check grid")
    worst = float(slopes.max())
    if worst > delta * (1 + SLOPE_TOLERANCE):
        raise ConstantsError(f"Rate slope {worst:.6g} exceeds delta {delta:.6g}")


@enforce_types
def derive_constants(cfg: SimConfig, topo: Topology, rate_model: RateModel) -> DerivedConstants:
    """Derive delta, C, U0, mu_max and phi_max for a run.

    The tangent rule takes delta as the rate derivative at zero power under
    the clipped gain; the secant rule takes the largest slope between pairs
    of admissible power levels, which is what the power set actually needs.
    """
    if not cfg.alpha > 1:
        raise ConstantsError(f"alpha must be > 1, got {cfg.alpha}")

    beta_g, beta_h = topology_path_losses(topo, cfg.carrier_freq, cfg.path_loss_exponent)
    g_cap = cfg.fading_cap * beta_g
    h_cap = cfg.fading_cap * beta_h
    levels = power_levels(cfg.P_m, cfg.power_levels)

    if topo.L == 0:
        delta = 0.0
        max_rate = 0.0
    elif cfg.delta_rule == "tangent":
        delta = max(rate_model.slope_bound(float(g)) for g in g_cap)
        max_rate = float(np.max(rate_model.rate(cfg.P_m, g_cap)))
    else:
        delta = max(rate_model.secant_bound(float(g), levels) for g in g_cap)
        max_rate = float(np.max(rate_model.rate(cfg.P_m, g_cap)))

    if not math.isfinite(delta):
        raise ConstantsError(f"Non-finite delta {delta}")
    _check_slope_grid(cfg, rate_model, g_cap, delta, levels)

    C = conversion_factor(delta, cfg.alpha)
    mu_max = cfg.A_m + cfg.slot_seconds * max_rate
    eap_peak = float(np.max(h_cap)) if len(h_cap) else 0.0
    phi_max = max(cfg.slot_seconds * cfg.P_m, cfg.slot_seconds * cfg.P_APm * topo.M * eap_peak)
    U0 = dummy_backlog(phi_max, C, cfg.alpha, delta, mu_max)

    logger.info(
        f"Derived constants ({cfg.delta_rule}): delta={delta:.4g} bits/J, C={C:.4g} bits/J, "
        f"mu_max={mu_max:.4g} bits, phi_max={phi_max:.4g} J, U0={str_with_bits(U0)}"
    )
    return DerivedConstants(
        delta=float(delta),
        C=float(C),
        U0=float(U0),
        mu_max=float(mu_max),
        phi_max=float(phi_max),
        alpha=cfg.alpha,
        g_cap=g_cap,
        h_cap=h_cap,
        beta_g=beta_g,
        beta_h=beta_h,
    )


@enforce_types
def reference_penalty(constants: DerivedConstants, topo: Topology) -> float:
    """V at which the E-AP is indifferent when every node sits at Z = mu_max
    and the beam delivers M * beta_h to each node.
    """
    return float(constants.C * constants.mu_max * topo.M * np.sum(constants.beta_h))


@enforce_types
def resolve_penalty(cfg: SimConfig, constants: DerivedConstants, topo: Topology) -> float:
    """The penalty weight a run uses: V, or V_relative times the reference."""
    if cfg.V_relative is None:
        return cfg.V
    return float(cfg.V_relative * reference_penalty(constants, topo))
