#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    The slot loop.

    Each slot samples the true channels, lets the controller decide on its
    (possibly estimated) view of them, realizes the transfers under the true
    channels and advances the state. A run is a pure function of its config,
    topology and run id.
"""
import json
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.channel.channel_trace import ReplaySampler, read_channel_trace
from wpcn_lib.channel.estimation import estimate_channels
from wpcn_lib.channel.rician import ChannelSampler
from wpcn_lib.controller.eecw import EECWController
from wpcn_lib.engine.arrivals import sample_arrivals
from wpcn_lib.engine.records import Trace
from wpcn_lib.engine.summary import RunSummary, build_id, summarize
from wpcn_lib.engine.transfer import realize_transfer
from wpcn_lib.exceptions import ConfigError, InvariantViolation, SimulationFault
from wpcn_lib.network.constants import derive_constants
from wpcn_lib.network.sim_config import SimConfig
from wpcn_lib.network.topology import Topology
from wpcn_lib.oracle.audit import audit_slot
from wpcn_lib.rate.rate_model import RateModel
from wpcn_lib.state.network_state import (
    conservation_gap,
    initial_state,
    step_limited,
    step_unlimited,
)

logger = logging.getLogger("engine")


@dataclass(frozen=True, eq=False)
class RunStreams:
    los: np.random.Generator
    fading: np.random.Generator
    estimation: np.random.Generator
    arrivals: np.random.Generator


@enforce_types
def spawn_streams(seed: int, run_id: int) -> RunStreams:
    """Independent generators per randomness source, keyed by (seed, run_id)."""
    children = np.random.SeedSequence(seed, spawn_key=(run_id,)).spawn(4)
    return RunStreams(*(np.random.default_rng(child) for child in children))


@enforce_types
def run(
    cfg: SimConfig,
    topo: Topology,
    run_id: int = 0,
    channel_sink: Optional[list] = None,
    audit_sink: Optional[list] = None,
) -> Tuple[Trace, RunSummary]:
    """Simulate cfg.horizon slots and summarize them.

    True channel states are appended to `channel_sink` when it is given;
    with `audit_sink`, every decision is re-solved by the oracles and their
    ViolationReports are appended to it.
    Raises SimulationFault, carrying the slot and a state snapshot, if a
    controller invariant breaks.
    """
    if len(cfg.arrival_rates) != topo.S:
        raise ConfigError(
            json.dumps({"run.arrival_kbps": f"needs {topo.S} entries, one per stream"})
        )

    rate_model = RateModel.from_config(cfg)
    constants = derive_constants(cfg, topo, rate_model)
    controller = EECWController.from_config(cfg, topo, constants, rate_model)
    streams = spawn_streams(cfg.seed, run_id)

    if cfg.channel_replay:
        sampler = ReplaySampler(read_channel_trace(cfg.channel_replay, topo))
    else:
        sampler = ChannelSampler(
            topo,
            constants.beta_g,
            constants.beta_h,
            cfg.rician_K,
            cfg.fading_cap,
            streams.los,
            streams.fading,
        )

    rates = np.array(cfg.arrival_rates, dtype=float)
    stream_ids = np.array(topo.stream_ids, dtype=int)
    state = initial_state(topo, constants.U0, cfg.limited)
    initial = state
    trace = Trace(topo.N, topo.link_ids, topo.stream_ids, capacity=cfg.horizon)
    no_drops = np.zeros((topo.N, topo.S))

    logger.info(
        f"Run {run_id}: seed={cfg.seed}, {cfg.horizon} slots, "
        f"{'limited' if cfg.limited else 'unlimited'}, {rate_model.describe()}, "
        f"V={controller.V:.4g}"
    )
    for t in range(cfg.horizon):
        truth = sampler.sample(t)
        if channel_sink is not None:
            channel_sink.append(truth)
        csi = estimate_channels(
            truth,
            cfg.pilot_energy_h,
            cfg.pilot_energy_g,
            cfg.pilot_noise,
            cfg.rician_K,
            constants.beta_g,
            constants.beta_h,
            streams.estimation,
            cfg.fading_cap,
        )
        arrivals = sample_arrivals(streams.arrivals, rates, cfg.A_m, cfg.slot_seconds, topo)

        try:
            action = controller.step(state, csi)
            if audit_sink is not None:
                audit_sink.extend(audit_slot(controller, state, csi, action))
            transfer = realize_transfer(action, truth, rate_model, topo, arrivals)
            flow = transfer.flow
            if cfg.limited:
                new_state, drops = step_limited(state, flow, cfg.buffer_cap, cfg.battery_cap)
                phi_out_real = drops["phi_out"]
                drop_buffer, drop_energy = drops["buffer"], drops["energy"]
                delivered = drops["delivered"]
            else:
                new_state = step_unlimited(state, flow)
                phi_out_real = flow.phi_out
                drop_buffer = drop_energy = no_drops
                delivered = flow.delivered
        except InvariantViolation as e:
            raise SimulationFault(f"slot {t}: {e}", t, state.snapshot()) from e

        trace.append(
            slot=t,
            energy_mode=action.tau_e > 0,
            e_ap=action.tau_e * action.P_AP,
            data_backlog=state.data_backlog,
            Z=action.Z,
            E_virtual=state.E_virtual,
            B=state.B,
            energy_received=transfer.received_energy,
            phi_in=flow.phi_in,
            phi_out=flow.phi_out,
            phi_out_real=phi_out_real,
            U_virtual=state.U_virtual,
            U=state.U,
            drop_buffer=drop_buffer,
            drop_energy=drop_energy,
            p=action.p,
            rate=action.R.sum(axis=1),
            stream=np.where(action.stream >= 0, stream_ids[np.maximum(action.stream, 0)], 0),
            realized=transfer.realized_rates,
            arrivals=arrivals.sum(axis=0),
            delivered=delivered,
            delivered_dummy=new_state.dummy_delivered - state.dummy_delivered,
        )
        state = new_state

    summary = summarize(
        trace, cfg.warmup_slots, cfg.slot_seconds, initial_backlog=float(initial.U.sum())
    )
    summary.energy_spill = float(state.energy_spill.sum())
    summary.constants = {**constants.as_dictionary(), "V": controller.V}
    summary.config = cfg.as_dictionary()
    summary.build_id = build_id()

    gap = conservation_gap(
        initial, state, float(trace.arrivals.sum()), float(trace.delivered.sum())
    )
    logger.debug(f"Run {run_id}: bit conservation gap {gap:.3g} bits")
    logger.info(f"Run {run_id} done: {summary.one_line()}")
    return trace, summary

