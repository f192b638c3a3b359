#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from tests.resources.helper_functions import path_topology
from wpcn_lib.channel.rician import ChannelState
from wpcn_lib.controller.eecw import ControlAction
from wpcn_lib.engine.transfer import realize_transfer
from wpcn_lib.rate.rate_model import SHANNON, RateModel

MODEL = RateModel(SHANNON, 1e5, 10 ** (-135 / 10) * 1e-3)
TAU = 1e-3


def _truth(topo, g2):
    g = np.sqrt(np.asarray(g2, dtype=float)).astype(complex)
    h = np.zeros((topo.N, topo.M), dtype=complex)
    h[:, 0] = [1e-3, 2e-3, 3e-3]
    return ChannelState(
        g=g,
        h=h,
        slot=0,
        g_los=np.ones(topo.L, dtype=complex),
        h_los=np.ones((topo.N, topo.M), dtype=complex),
        g_scatter=np.zeros(topo.L, dtype=complex),
        h_scatter=np.zeros((topo.N, topo.M), dtype=complex),
    )


def _action(topo, tau_e=0.0, P_AP=0.0, p=None, R=None, stream=None, cap=None):
    w = np.zeros(topo.M, dtype=complex)
    w[0] = 1.0
    p = np.zeros(topo.L) if p is None else np.asarray(p, dtype=float)
    return ControlAction(
        tau_e=tau_e,
        tau_d=TAU - tau_e,
        w=w,
        P_AP=P_AP,
        p=p,
        R=np.zeros((topo.L, topo.S)) if R is None else np.asarray(R, dtype=float),
        phi_in_rule=np.zeros(topo.N) if cap is None else np.asarray(cap, dtype=float),
        phi_out=np.zeros(topo.N),
        scores=np.zeros(topo.L),
        stream=np.full(topo.L, -1) if stream is None else np.asarray(stream),
        Z=np.zeros(topo.N),
        gains=np.zeros(topo.N),
        F_d=0.0,
        F_e=0.0,
    )


@pytest.mark.unit
def test_energy_slot_caps_intake():
    topo = path_topology(2, eap_antennas=2)
    action = _action(topo, tau_e=TAU, P_AP=4.0, cap=[1.0, 1e-9, 0.0])

    transfer = realize_transfer(
        action, _truth(topo, [1e-6, 1e-6]), MODEL, topo, np.zeros((topo.N, topo.S))
    )

    received = np.array([1e-6, 4e-6, 9e-6]) * TAU * 4.0
    assert transfer.received_energy == pytest.approx(received)
    assert transfer.flow.phi_in == pytest.approx([received[0], 1e-9, 0.0])
    assert not transfer.flow.link_bits.any()
    assert not transfer.realized_rates.any()


@pytest.mark.unit
def test_data_slot_uses_true_channel():
    topo = path_topology(2, eap_antennas=2)
    g2 = [6e-6, 1e-7]
    planned = MODEL.rate(1e-3, 6e-6)
    # link 1 was planned on the true gain, link 2 on an optimistic estimate
    action = _action(
        topo, p=[1e-3, 1e-3], R=[[planned], [planned]], stream=[0, 0]
    )
    arrivals = np.array([[1000.0], [0.0], [0.0]])

    transfer = realize_transfer(action, _truth(topo, g2), MODEL, topo, arrivals)

    weak = MODEL.rate(1e-3, 1e-7)
    assert transfer.realized_rates == pytest.approx([planned, weak])
    flow = transfer.flow
    assert flow.link_bits[:, 0] == pytest.approx([TAU * planned, TAU * weak])
    assert flow.mu_out[:, 0] == pytest.approx([TAU * planned, TAU * weak, 0.0])
    # the sink does not queue what it receives
    assert flow.mu_in[:, 0] == pytest.approx([1000.0, TAU * planned, 0.0])
    assert flow.delivered == pytest.approx([TAU * weak])
    assert not flow.phi_in.any()


@pytest.mark.unit
def test_idle_links_carry_nothing():
    topo = path_topology(2, eap_antennas=2)
    action = _action(topo, p=[0.0, 0.0])

    transfer = realize_transfer(
        action, _truth(topo, [6e-6, 6e-6]), MODEL, topo, np.zeros((topo.N, topo.S))
    )

    assert not transfer.flow.link_bits.any()
    assert not transfer.flow.mu_out.any()
