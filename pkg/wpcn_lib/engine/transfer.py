#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""What actually happens in a slot once the action meets the true channels."""
from dataclasses import dataclass

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.channel.rician import ChannelState
from wpcn_lib.controller.eecw import ControlAction
from wpcn_lib.network.topology import Topology
from wpcn_lib.rate.rate_model import RateModel
from wpcn_lib.state.network_state import FlowRealization


@dataclass(frozen=True, eq=False)
class Transfer:
    flow: FlowRealization
    received_energy: np.ndarray  # (N,) joules reaching each node, before the intake cap
    realized_rates: np.ndarray  # (L,) bits/s actually carried


@enforce_types
def realize_transfer(
    action: ControlAction,
    truth: ChannelState,
    rate_model: RateModel,
    topo: Topology,
    arrivals: np.ndarray,
) -> Transfer:
    """Energy slots deliver |w . h_n|^2 tau_e P_AP under the true h, of which
    each node stores at most its planned cap. Data slots carry
    min(scheduled rate, rate the true channel supports at the chosen power).
    """
    received = np.zeros(topo.N)
    phi_in = np.zeros(topo.N)
    realized = np.zeros(topo.L)
    link_bits = np.zeros((topo.L, topo.S))

    if action.tau_e > 0:
        received = np.abs(truth.h @ action.w) ** 2 * action.tau_e * action.P_AP
        phi_in = np.minimum(received, action.phi_in_rule)
    elif topo.L:
        scheduled = action.R.sum(axis=1)
        achievable = np.asarray(rate_model.rate(action.p, truth.g2), dtype=float)
        realized = np.where(scheduled > 0, np.minimum(scheduled, achievable), 0.0)
        active = np.nonzero(action.stream >= 0)[0]
        link_bits[active, action.stream[active]] = action.tau_d * realized[active]

    mu_out = np.zeros((topo.N, topo.S))
    mu_in = arrivals.copy()
    if topo.L:
        np.add.at(mu_out, topo.head, link_bits)
        np.add.at(mu_in, topo.tail, link_bits * ~topo.sink_mask[topo.tail])

    flow = FlowRealization(
        mu_in=mu_in,
        mu_out=mu_out,
        phi_in=phi_in,
        phi_out=action.phi_out.copy(),
        arrivals=arrivals,
        link_bits=link_bits,
        link_head=topo.head,
        link_tail=topo.tail,
        sink_mask=topo.sink_mask,
    )
    return Transfer(flow=flow, received_energy=received, realized_rates=realized)
