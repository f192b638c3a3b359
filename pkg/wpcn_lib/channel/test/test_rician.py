#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import math

import numpy as np
import pytest

from wpcn_lib.channel.rician import (
    ChannelSampler,
    LosGeometry,
    draw_los_geometry,
    rician_weights,
    sample_channels,
)
from wpcn_lib.exceptions import ChannelError
from tests.resources.helper_functions import path_topology


def _betas(topo, value=1.0):
    return np.full(topo.L, value), np.full(topo.N, value)


@pytest.mark.unit
def test_rician_weights():
    assert rician_weights(0.0) == (0.0, 1.0)
    assert rician_weights(math.inf) == (1.0, 0.0)
    los, scatter = rician_weights(3.0)
    assert los ** 2 + scatter ** 2 == pytest.approx(1.0)
    with pytest.raises(ChannelError):
        rician_weights(-1.0)


@pytest.mark.unit
def test_pure_los_and_pure_scatter(rng):
    topo = path_topology(3)
    beta_g, beta_h = _betas(topo, 4.0)
    los = draw_los_geometry(rng, topo)

    state = sample_channels(rng, topo, beta_g, beta_h, math.inf, 10.0, los)
    assert np.array_equal(state.g, 2.0 * los.link_phase)
    assert np.array_equal(state.h, 2.0 * los.steering)

    state = sample_channels(rng, topo, beta_g, beta_h, 0.0, 1e9, los)
    assert np.array_equal(state.g, 2.0 * state.g_scatter)


@pytest.mark.unit
def test_clipping_bounds(rng):
    topo = path_topology(4)
    beta_g, beta_h = _betas(topo, 1e-6)
    cap = 2.0

    for slot in range(200):
        state = sample_channels(rng, topo, beta_g, beta_h, 0.0, cap, slot=slot)
        assert np.all(state.g2 <= cap * beta_g)
        assert np.all(np.sum(np.abs(state.h) ** 2, axis=1) / topo.M <= cap * beta_h)
        assert np.all(np.isfinite(state.g)) and np.all(np.isfinite(state.h))


@pytest.mark.unit
def test_mean_power_matches_path_gain(rng):
    topo = path_topology(1, eap_antennas=1)
    beta_g, beta_h = _betas(topo, 3e-6)
    los = LosGeometry.broadside(topo)

    powers = [
        sample_channels(rng, topo, beta_g, beta_h, 1.0, 1e6, los).g2[0] for _ in range(20000)
    ]
    assert np.mean(powers) == pytest.approx(3e-6, rel=0.03)


@pytest.mark.unit
def test_sampler_is_seeded():
    topo = path_topology(2)
    beta_g, beta_h = _betas(topo, 1e-6)

    def draw():
        sampler = ChannelSampler(
            topo,
            beta_g,
            beta_h,
            10.0,
            10.0,
            np.random.default_rng(1),
            np.random.default_rng(2),
        )
        return [sampler.sample(t) for t in range(5)]

    first, second = draw(), draw()
    assert all(a.equals(b) for a, b in zip(first, second))
    # LOS stays fixed for the whole run
    assert np.array_equal(first[0].h_los, first[4].h_los)
    assert not np.array_equal(first[0].g, first[1].g)


@pytest.mark.unit
def test_steering_is_unit_modulus(rng):
    topo = path_topology(2, eap_antennas=6)
    los = draw_los_geometry(rng, topo)

    assert np.allclose(np.abs(los.steering), 1.0)
    assert np.allclose(np.abs(los.link_phase), 1.0)
    assert np.allclose(np.sum(np.abs(los.steering) ** 2, axis=1), topo.M)
