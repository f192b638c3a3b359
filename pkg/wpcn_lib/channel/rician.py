#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Rician block fading for data links and E-AP energy links.

    Each coefficient is a fixed line-of-sight part plus a scattered part
    redrawn every slot, scaled by the mean path gain, then clipped so the
    instantaneous power never exceeds fading_cap times its mean.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.exceptions import ChannelError
from wpcn_lib.network.topology import Topology

logger = logging.getLogger(__name__)

# keeps clipped powers at or below the cap after rounding
CLIP_MARGIN = 1.0 - 1e-15


@dataclass(frozen=True, eq=False)
class LosGeometry:
    """Deterministic channel components, fixed for the whole run."""

    link_phase: np.ndarray  # (L,) unit-modulus
    steering: np.ndarray  # (N, M) unit-modulus ULA response

    @classmethod
    def broadside(cls, topo: Topology) -> "LosGeometry":
        return cls(
            np.ones(topo.L, dtype=complex), np.ones((topo.N, topo.M), dtype=complex)
        )


@enforce_types
def draw_los_geometry(rng: np.random.Generator, topo: Topology) -> LosGeometry:
    """Half-wavelength ULA steering vector at a random azimuth per node and a
    random phase per data link.
    """
    azimuth = rng.uniform(-math.pi / 2, math.pi / 2, topo.N)
    antenna = np.arange(topo.M)
    steering = np.exp(1j * math.pi * np.outer(np.sin(azimuth), antenna))
    link_phase = np.exp(1j * rng.uniform(0.0, 2 * math.pi, topo.L))
    return LosGeometry(link_phase=link_phase, steering=steering)


@dataclass(frozen=True, eq=False)
class ChannelState:
    g: np.ndarray  # (L,) complex data-link gains
    h: np.ndarray  # (N, M) complex energy-link gains, row n = h_n
    slot: int
    g_los: np.ndarray
    h_los: np.ndarray
    g_scatter: np.ndarray  # unit-variance scattered draws before scaling
    h_scatter: np.ndarray

    @property
    def g2(self) -> np.ndarray:
        return np.abs(self.g) ** 2

    def equals(self, other: "ChannelState") -> bool:
        return bool(np.array_equal(self.g, other.g) and np.array_equal(self.h, other.h))


def rician_weights(K: float) -> Tuple[float, float]:
    """(LOS amplitude weight, scatter amplitude weight) for unit mean power."""
    if K < 0:
        raise ChannelError(f"Rician K must be >= 0, got {K}")
    if math.isinf(K):
        return 1.0, 0.0
    return math.sqrt(K / (K + 1.0)), math.sqrt(1.0 / (K + 1.0))


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard circularly-symmetric complex normal draws, E|z|^2 = 1."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)


def clip_power(g: np.ndarray, h: np.ndarray, beta_g: np.ndarray, beta_h: np.ndarray, fading_cap: float):
    """Scale down coefficients whose power exceeds fading_cap times the mean."""
    g_cap = fading_cap * beta_g
    power = np.abs(g) ** 2
    over = power > g_cap
    g = np.where(over, g * np.sqrt(g_cap / np.where(over, power, 1.0)) * CLIP_MARGIN, g)

    if h.size:
        h_cap = fading_cap * beta_h
        mean_power = np.sum(np.abs(h) ** 2, axis=1) / h.shape[1]
        over_h = mean_power > h_cap
        scale = np.where(over_h, np.sqrt(h_cap / np.where(over_h, mean_power, 1.0)) * CLIP_MARGIN, 1.0)
        h = h * scale[:, None]
    return g, h


def compose(los: np.ndarray, scatter: np.ndarray, beta: np.ndarray, K: float) -> np.ndarray:
    los_weight, scatter_weight = rician_weights(K)
    amplitude = np.sqrt(beta)
    if los.ndim == 2:
        amplitude = amplitude[:, None]
    return amplitude * (los_weight * los + scatter_weight * scatter)


@enforce_types
def sample_channels(
    rng: np.random.Generator,
    topo: Topology,
    beta_g: np.ndarray,
    beta_h: np.ndarray,
    K: float,
    fading_cap: float,
    los: Optional[LosGeometry] = None,
    slot: int = 0,
) -> ChannelState:
    """Draw one slot of true channel coefficients.

    g_l = sqrt(beta K/(K+1)) gbar_l + sqrt(beta/(K+1)) g^w_l, likewise per
    antenna for h_n, then power-clipped. Scatter is drawn even when K is
    infinite so the rng stream does not depend on K.
    """
    if los is None:
        los = LosGeometry.broadside(topo)

    g_scatter = complex_normal(rng, topo.L)
    h_scatter = complex_normal(rng, (topo.N, topo.M))
    g = compose(los.link_phase, g_scatter, beta_g, K)
    h = compose(los.steering, h_scatter, beta_h, K)
    g, h = clip_power(g, h, beta_g, beta_h, fading_cap)

    return ChannelState(
        g=g,
        h=h,
        slot=slot,
        g_los=los.link_phase,
        h_los=los.steering,
        g_scatter=g_scatter,
        h_scatter=h_scatter,
    )


class ChannelSampler:
    """Per-run source of true channel states: fixed LOS geometry, fresh scatter."""

    @enforce_types
    def __init__(
        self,
        topo: Topology,
        beta_g: np.ndarray,
        beta_h: np.ndarray,
        K: float,
        fading_cap: float,
        los_rng: np.random.Generator,
        fading_rng: np.random.Generator,
    ) -> None:
        self.topo = topo
        self.beta_g = beta_g
        self.beta_h = beta_h
        self.K = K
        self.fading_cap = fading_cap
        self.los = draw_los_geometry(los_rng, topo)
        self.rng = fading_rng

    def sample(self, slot: int) -> ChannelState:
        return sample_channels(
            self.rng, self.topo, self.beta_g, self.beta_h, self.K, self.fading_cap, self.los, slot
        )
