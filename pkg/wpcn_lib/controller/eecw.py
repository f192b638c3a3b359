#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    The per-slot controller: routing, data scheduling, beamforming, E-AP
    power and time sharing, all computed on the controller's counters and
    the CSI it was given.
"""
import logging
from dataclasses import dataclass

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.channel.estimation import EstimatedChannelState
from wpcn_lib.controller.beamforming import beamform
from wpcn_lib.controller.energy import (
    energy_objective,
    floor_safe_cap,
    intake_rule,
    schedule_eap,
    time_share,
)
from wpcn_lib.controller.routing import routing_weights, select_streams
from wpcn_lib.controller.scheduling import AUTO, schedule_data
from wpcn_lib.network.constants import DerivedConstants, resolve_penalty
from wpcn_lib.network.sim_config import SimConfig
from wpcn_lib.network.topology import Topology
from wpcn_lib.rate.rate_model import RateModel, power_levels
from wpcn_lib.state.network_state import NetworkState, imbalance_vector

logger = logging.getLogger(__name__)

ENERGY = "energy"
DATA = "data"


@dataclass(frozen=True, eq=False)
class ControlAction:
    tau_e: float
    tau_d: float
    w: np.ndarray  # (M,)
    P_AP: float
    p: np.ndarray  # (L,) watts
    R: np.ndarray  # (L, S) bits/s
    phi_in_rule: np.ndarray  # (N,) joules the nodes may store this slot
    phi_out: np.ndarray  # (N,) joules each node plans to spend
    scores: np.ndarray  # (L,) best per-link net weight
    stream: np.ndarray  # (L,) stream index per link, -1 if idle
    Z: np.ndarray  # (N,) imbalance the decision was made on
    gains: np.ndarray  # (N,) beam gains under the controller's CSI
    F_d: float
    F_e: float

    @property
    def mode(self) -> str:
        return ENERGY if self.tau_e > 0 else DATA

    def equals(self, other: "ControlAction") -> bool:
        return (
            self.tau_e == other.tau_e
            and self.P_AP == other.P_AP
            and np.array_equal(self.w, other.w)
            and np.array_equal(self.p, other.p)
            and np.array_equal(self.R, other.R)
            and np.array_equal(self.phi_in_rule, other.phi_in_rule)
        )


class EECWController:
    """Decides one slot's action from the counters and estimated CSI."""

    @enforce_types
    def __init__(
        self,
        topo: Topology,
        constants: DerivedConstants,
        rate_model: RateModel,
        levels: np.ndarray,
        V: float,
        P_APm: float,
        slot_seconds: float,
        backend: str = AUTO,
    ) -> None:
        self.topo = topo
        self.constants = constants
        self.rate_model = rate_model
        self.levels = levels
        self.V = V
        self.P_APm = P_APm
        self.slot_seconds = slot_seconds
        self.backend = backend

    @classmethod
    def from_config(
        cls,
        cfg: SimConfig,
        topo: Topology,
        constants: DerivedConstants,
        rate_model: RateModel,
    ) -> "EECWController":
        return cls(
            topo,
            constants,
            rate_model,
            power_levels(cfg.P_m, cfg.power_levels),
            resolve_penalty(cfg, constants, topo),
            cfg.P_APm,
            cfg.slot_seconds,
            cfg.scheduler,
        )

    def step(self, st: NetworkState, csi: EstimatedChannelState) -> ControlAction:
        topo, C = self.topo, self.constants.C
        Z = imbalance_vector(st, C)
        # raises ImbalanceFloorViolated on a broken floor
        cap = intake_rule(Z, self.constants.mu_max, C)
        cap = floor_safe_cap(
            cap, np.sum(st.U_virtual, axis=1), st.E_virtual, self.constants.mu_max, C
        )

        W = routing_weights(st.U_virtual, Z, topo)
        streams, W_l = select_streams(W)
        schedule = schedule_data(
            Z, W_l, csi.g2, self.rate_model, self.levels, C, topo, self.backend
        )

        beam = beamform(Z, csi.h, C)
        P_AP = schedule_eap(self.V, beam.gains, Z, C, self.P_APm)
        F_e = energy_objective(P_AP, self.V, beam.gains, Z, C)
        tau_e, tau_d = time_share(schedule.F_d, F_e, self.slot_seconds)

        p = np.zeros(topo.L)
        R = np.zeros((topo.L, topo.S))
        stream = np.full(topo.L, -1, dtype=int)
        phi_out = np.zeros(topo.N)
        if tau_d > 0:
            p = schedule.p
            for link in schedule.active:
                R[link, streams[link]] = schedule.rates[link]
                stream[link] = streams[link]
            cap = np.zeros(topo.N)
            np.add.at(phi_out, topo.head, tau_d * p)

        logger.debug(
            f"slot {st.slot}: {'energy' if tau_e > 0 else 'data'} slot, P_AP={P_AP:g}, "
            f"active={[topo.link_ids[l] for l in schedule.active] if tau_d > 0 else []}"
        )
        return ControlAction(
            tau_e=tau_e,
            tau_d=tau_d,
            w=beam.w,
            P_AP=P_AP if tau_e > 0 else 0.0,
            p=p,
            R=R,
            phi_in_rule=cap,
            phi_out=phi_out,
            scores=schedule.best_scores,
            stream=stream,
            Z=Z,
            gains=beam.gains,
            F_d=schedule.F_d,
            F_e=F_e,
        )


@enforce_types
def eecw_step(
    st: NetworkState,
    csi: EstimatedChannelState,
    topo: Topology,
    constants: DerivedConstants,
    rate_model: RateModel,
    cfg: SimConfig,
) -> ControlAction:
    """One controller decision without keeping a controller around."""
    return EECWController.from_config(cfg, topo, constants, rate_model).step(st, csi)
