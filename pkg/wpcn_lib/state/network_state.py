#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Queue, battery and virtual-counter evolution.

    Unlimited mode keeps one set of queues and batteries, which the
    controller reads directly. Limited mode adds capped real buffers and
    batteries next to uncapped virtual counters that follow the scheduled
    flows; the controller only ever reads the virtual counters.

    The queue of a stream at its own sink is an absorbing reservoir: bits
    reaching it are delivered and leave the system, so the controller's
    counter there stays at its initial dummy level and holds no real data.
"""
import logging
import math
from dataclasses import dataclass, replace
from typing import Any, Dict, Tuple

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.exceptions import BatteryConstraintViolated
from wpcn_lib.network.topology import Topology

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NetworkState:
    U: np.ndarray  # (N, S) real data queues, bits
    B: np.ndarray  # (N,) real batteries, joules
    U_virtual: np.ndarray  # (N, S) controller counters, bits
    E_virtual: np.ndarray  # (N,) controller counters, joules
    drops_buffer: np.ndarray  # (N, S) cumulative overflow drops, bits
    drops_energy: np.ndarray  # (N, S) cumulative outage drops, bits
    slot: int
    dummy: np.ndarray  # (N, S) initial dummy bits still held in U
    energy_spill: np.ndarray  # (N,) cumulative joules discarded at full batteries
    dummy_delivered: np.ndarray  # (S,) cumulative dummy bits absorbed at sinks

    def snapshot(self) -> Dict[str, Any]:
        return {
            "slot": self.slot,
            "U": self.U.tolist(),
            "B": self.B.tolist(),
            "U_virtual": self.U_virtual.tolist(),
            "E_virtual": self.E_virtual.tolist(),
            "drops_buffer": self.drops_buffer.tolist(),
            "drops_energy": self.drops_energy.tolist(),
        }

    @property
    def data_backlog(self) -> float:
        """Real stored bits excluding initial dummy bits."""
        return float(np.sum(self.U - self.dummy))


@dataclass(frozen=True, eq=False)
class FlowRealization:
    """Realized per-slot flows. mu_in includes the external arrivals."""

    mu_in: np.ndarray  # (N, S)
    mu_out: np.ndarray  # (N, S)
    phi_in: np.ndarray  # (N,)
    phi_out: np.ndarray  # (N,)
    arrivals: np.ndarray  # (N, S)
    link_bits: np.ndarray  # (L, S) bits sent over each link
    link_head: np.ndarray  # (L,) 0-based
    link_tail: np.ndarray  # (L,)
    sink_mask: np.ndarray  # (N, S)

    @property
    def delivered(self) -> np.ndarray:
        """Bits per stream that reached their sink this slot."""
        if not len(self.link_bits):
            return np.zeros(self.sink_mask.shape[1])
        return np.sum(self.link_bits * self.sink_mask[self.link_tail], axis=0)


@enforce_types
def initial_state(topo: Topology, U0: float, limited: bool = False) -> NetworkState:
    """Every controller queue starts with U0 dummy bits and every battery empty.

    In limited mode the real buffers start empty: the dummy bits exist only
    in the controller's counters.
    """
    shape = (topo.N, topo.S)
    U_virtual = np.full(shape, U0, dtype=float)
    if limited:
        U = np.zeros(shape)
        dummy = np.zeros(shape)
    else:
        U = U_virtual.copy()
        dummy = U_virtual.copy()
    return NetworkState(
        U=U,
        B=np.zeros(topo.N),
        U_virtual=U_virtual,
        E_virtual=np.zeros(topo.N),
        drops_buffer=np.zeros(shape),
        drops_energy=np.zeros(shape),
        slot=0,
        dummy=dummy,
        energy_spill=np.zeros(topo.N),
        dummy_delivered=np.zeros(topo.S),
    )


def _forward_dummy(
    dummy: np.ndarray, link_bits: np.ndarray, flow: FlowRealization
) -> Tuple[np.ndarray, np.ndarray]:
    """Dummy bits leave a queue first and stay dummy at the tail; at a sink they vanish.

    Returns the moved dummy levels and the dummy bits absorbed per stream.
    """
    if not len(link_bits):
        return dummy, np.zeros(dummy.shape[1])
    moved = np.minimum(dummy[flow.link_head], link_bits)
    updated = dummy.copy()
    np.subtract.at(updated, flow.link_head, moved)
    received = moved * ~flow.sink_mask[flow.link_tail]
    np.add.at(updated, flow.link_tail, received)
    absorbed = np.sum(moved * flow.sink_mask[flow.link_tail], axis=0)
    return np.maximum(updated, 0.0), absorbed


@enforce_types
def step_unlimited(st: NetworkState, flow: FlowRealization) -> NetworkState:
    """U' = [U - mu_out]^+ + mu_in, B' = B - phi_out + phi_in; counters mirror."""
    short = np.nonzero(flow.phi_out > st.B)[0]
    if len(short):
        n = int(short[0])
        raise BatteryConstraintViolated(
            f"battery constraint violated at node {n + 1}: "
            f"phi_out={flow.phi_out[n]!r} > B={st.B[n]!r}"
        )

    U = np.maximum(st.U - flow.mu_out, 0.0) + flow.mu_in
    B = st.B - flow.phi_out + flow.phi_in
    dummy, absorbed = _forward_dummy(st.dummy, flow.link_bits, flow)
    return replace(
        st,
        U=U,
        B=B,
        U_virtual=U.copy(),
        E_virtual=B.copy(),
        slot=st.slot + 1,
        dummy=np.minimum(dummy, U),
        dummy_delivered=st.dummy_delivered + absorbed,
    )


@enforce_types
def step_limited(
    st: NetworkState,
    flow: FlowRealization,
    buffer_cap: float,
    battery_cap: float,
) -> Tuple[NetworkState, Dict[str, np.ndarray]]:
    """Advance virtual counters by the scheduled flows and real buffers by what
    they can actually hold and afford.

    A node whose real battery cannot cover its scheduled spend sends nothing:
    the bits it would have sent are dropped (counted per queue) and no energy
    is drained. Overflowing arrivals at a full buffer are dropped too.
    """
    U_virtual = (st.U_virtual - flow.mu_out) + flow.mu_in
    E_virtual = (st.E_virtual - flow.phi_out) + flow.phi_in

    outage = flow.phi_out > st.B
    phi_out = np.where(outage, 0.0, flow.phi_out)

    # real bits leaving each head: bounded by what the real queue holds
    link_bits = flow.link_bits
    if len(link_bits):
        available = st.U[flow.link_head]
        sent = np.minimum(available, link_bits)
        lost_outage = sent * outage[flow.link_head][:, None]
        delivered_ok = sent - lost_outage
    else:
        sent = lost_outage = delivered_ok = link_bits

    drained = np.zeros_like(st.U)
    received = np.zeros_like(st.U)
    drop_energy = np.zeros_like(st.U)
    if len(link_bits):
        np.add.at(drained, flow.link_head, sent)
        np.add.at(drop_energy, flow.link_head, lost_outage)
        np.add.at(received, flow.link_tail, delivered_ok * ~flow.sink_mask[flow.link_tail])

    U_pre = (st.U - drained) + received + flow.arrivals
    U = np.minimum(U_pre, buffer_cap)
    drop_buffer = U_pre - U

    B_pre = (st.B - phi_out) + flow.phi_in
    B = np.minimum(B_pre, battery_cap)
    spill = B_pre - B

    dummy, absorbed = _forward_dummy(st.dummy, delivered_ok, flow)
    dummy = np.minimum(dummy, U)

    new_state = replace(
        st,
        U=U,
        B=B,
        U_virtual=U_virtual,
        E_virtual=E_virtual,
        drops_buffer=st.drops_buffer + drop_buffer,
        drops_energy=st.drops_energy + drop_energy,
        slot=st.slot + 1,
        dummy=dummy,
        energy_spill=st.energy_spill + spill,
        dummy_delivered=st.dummy_delivered + absorbed,
    )
    drops = {
        "buffer": drop_buffer,
        "energy": drop_energy,
        "spill": spill,
        "phi_out": phi_out,
        "delivered": np.sum(delivered_ok * flow.sink_mask[flow.link_tail], axis=0)
        if len(link_bits)
        else np.zeros(st.U.shape[1]),
    }
    if drop_buffer.any() or drop_energy.any():
        logger.debug(
            f"slot {st.slot}: dropped {drop_buffer.sum():.0f} bits (buffer), "
            f"{drop_energy.sum():.0f} bits (energy outage)"
        )
    return new_state, drops


@enforce_types
def imbalance_vector(st: NetworkState, C: float) -> np.ndarray:
    """Z_n = sum_s U~_{n,s} - C E~_n, on the controller's counters."""
    return np.sum(st.U_virtual, axis=1) - C * st.E_virtual


@enforce_types
def conservation_gap(
    initial: NetworkState, final: NetworkState, arrivals: float, delivered: float
) -> float:
    """initial + arrivals - (stored + dropped + delivered), in bits; zero up to rounding."""
    stored = float(np.sum(final.U))
    dropped = float(np.sum(final.drops_buffer) + np.sum(final.drops_energy))
    dropped -= float(np.sum(initial.drops_buffer) + np.sum(initial.drops_energy))
    return float(np.sum(initial.U)) + arrivals - (stored + dropped + delivered)


def is_limited(buffer_cap: float, battery_cap: float) -> bool:
    return math.isfinite(buffer_cap) or math.isfinite(battery_cap)
