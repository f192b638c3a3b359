#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Pilot-based CSI estimates of the scattered channel components."""
import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.channel.rician import ChannelState, clip_power, complex_normal, compose
from wpcn_lib.exceptions import ChannelError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EstimatedChannelState:
    g: np.ndarray
    h: np.ndarray
    slot: int
    var_g: np.ndarray  # (L,) error variance of the scattered part
    var_h: np.ndarray  # (N,)

    @property
    def g2(self) -> np.ndarray:
        return np.abs(self.g) ** 2


@enforce_types
def estimation_error_variance(
    beta: np.ndarray, pilot_energy: float, pilot_noise: float, K: float
) -> np.ndarray:
    """sigma^2 = (beta psi / (sigma_N (K+1)) + 1)^-1; zero for a noiseless pilot."""
    if not pilot_noise > 0:
        raise ChannelError(f"Pilot noise must be positive, got {pilot_noise}")
    if math.isinf(pilot_energy):
        return np.zeros_like(beta, dtype=float)
    if math.isinf(K):
        return np.ones_like(beta, dtype=float)
    return 1.0 / (beta * pilot_energy / (pilot_noise * (K + 1.0)) + 1.0)


def _estimate_scatter(
    rng: np.random.Generator, scatter: np.ndarray, variance: np.ndarray
) -> np.ndarray:
    """Draw the estimate of the scatter given its true value.

    With truth = estimate + error, estimate ~ CN(0, 1-var) and error ~
    CN(0, var) independent, the estimate given the truth is
    CN((1-var) truth, (1-var) var).
    """
    noise = complex_normal(rng, scatter.shape)
    if scatter.ndim == 2:
        variance = variance[:, None]
    return (1.0 - variance) * scatter + np.sqrt((1.0 - variance) * variance) * noise


@enforce_types
def estimate_channels(
    truth: ChannelState,
    pilot_energy_h: Union[int, float],
    pilot_energy_g: Union[int, float],
    pilot_noise: float,
    K: float,
    beta_g: np.ndarray,
    beta_h: np.ndarray,
    rng: np.random.Generator,
    fading_cap: float = 10.0,
) -> EstimatedChannelState:
    """Estimate the scattered parts; the LOS parts are known exactly.

    Entries with a noiseless pilot are copied from the truth unchanged.
    """
    if not pilot_energy_h > 0 or not pilot_energy_g > 0:
        raise ChannelError("Pilot energies must be positive")

    var_g = estimation_error_variance(beta_g, float(pilot_energy_g), pilot_noise, K)
    var_h = estimation_error_variance(beta_h, float(pilot_energy_h), pilot_noise, K)

    g_hat = _estimate_scatter(rng, truth.g_scatter, var_g)
    h_hat = _estimate_scatter(rng, truth.h_scatter, var_h)
    g_est = compose(truth.g_los, g_hat, beta_g, K)
    h_est = compose(truth.h_los, h_hat, beta_h, K)
    g_est, h_est = clip_power(g_est, h_est, beta_g, beta_h, fading_cap)

    g_est = np.where(var_g == 0.0, truth.g, g_est)
    if truth.h.size:
        h_est = np.where((var_h == 0.0)[:, None], truth.h, h_est)

    return EstimatedChannelState(g=g_est, h=h_est, slot=truth.slot, var_g=var_g, var_h=var_h)


@enforce_types
def perfect_estimate(truth: ChannelState) -> EstimatedChannelState:
    return EstimatedChannelState(
        g=truth.g.copy(),
        h=truth.h.copy(),
        slot=truth.slot,
        var_g=np.zeros(truth.g.shape),
        var_h=np.zeros(truth.h.shape[0]),
    )
