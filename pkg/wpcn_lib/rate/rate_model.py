#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Rate-power functions for orthogonal data links: the Shannon rate and the
    finite-blocklength (normal approximation) rate. All rates are in bits/s.
    Functions accept scalars or numpy arrays and broadcast.
"""
import logging
import math
from typing import Union

import numpy as np
from enforce_typing import enforce_types
from scipy.optimize import brentq
from scipy.special import erfc

from wpcn_lib.exceptions import RateError

logger = logging.getLogger(__name__)

SHANNON = "shannon"
FINITE_BLOCKLENGTH = "finite_blocklength"

ArrayLike = Union[float, np.ndarray]


def q_function(x: ArrayLike) -> ArrayLike:
    """Gaussian tail probability Q(x) = P(N(0,1) > x)."""
    return 0.5 * erfc(np.asarray(x) / math.sqrt(2.0))


@enforce_types
def q_inverse(rho: float) -> float:
    """Return x with Q(x) = rho.

    Brent bracketing on the tail, then Newton polishing (Q' = -pdf) so the
    residual is at floating-point resolution even for rho near 1e-10.
    """
    if not 0 < rho < 1:
        raise RateError(f"rho must be in (0, 1), got {rho}")

    x = brentq(lambda v: float(q_function(v)) - rho, -40.0, 40.0, xtol=1e-14, maxiter=500)
    for _ in range(3):
        pdf = math.exp(-0.5 * x * x) / math.sqrt(2 * math.pi)
        if pdf == 0.0:
            break
        step = (float(q_function(x)) - rho) / pdf
        x += step
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    return float(x)


def rate_shannon(p: ArrayLike, g2: ArrayLike, W: float, N0: float) -> ArrayLike:
    """W * log2(1 + p*g2 / (W*N0))."""
    snr = np.asarray(p, dtype=float) * np.asarray(g2, dtype=float) / (W * N0)
    rate = W * np.log1p(snr) / math.log(2.0)
    return float(rate) if np.ndim(rate) == 0 else rate


def rate_finite(
    p: ArrayLike,
    g2: ArrayLike,
    W: float,
    N0: float,
    codeword_len: float,
    rho: float,
    qinv_rho: Union[float, None] = None,
) -> ArrayLike:
    """Normal-approximation rate, clamped at zero.

    W * [log2(1+snr) - sqrt((1 - (1+snr)^-2) / L) * Qinv(rho) / ln 2]^+
    """
    if math.isinf(codeword_len):
        return rate_shannon(p, g2, W, N0)
    if qinv_rho is None:
        qinv_rho = q_inverse(rho)
    snr = np.asarray(p, dtype=float) * np.asarray(g2, dtype=float) / (W * N0)
    capacity = np.log1p(snr) / math.log(2.0)
    dispersion = np.sqrt((1.0 - (1.0 + snr) ** -2) / codeword_len)
    rate = W * np.maximum(capacity - dispersion * qinv_rho / math.log(2.0), 0.0)
    return float(rate) if np.ndim(rate) == 0 else rate


class RateModel:
    """Per-link rate-power function R(p, |g|^2) used by scheduler and engine."""

    @enforce_types
    def __init__(
        self,
        kind: str,
        W: float,
        N0: float,
        codeword_len: float = math.inf,
        block_err: float = 1e-10,
    ) -> None:
        if kind not in (SHANNON, FINITE_BLOCKLENGTH):
            raise RateError(f"Unknown rate model kind {kind}")
        if not W > 0 or not N0 > 0:
            raise RateError("Bandwidth and noise density must be positive")
        if kind == FINITE_BLOCKLENGTH and not codeword_len >= 1:
            raise RateError(f"Codeword length must be >= 1, got {codeword_len}")

        self.kind = kind
        self.W = W
        self.N0 = N0
        self.codeword_len = codeword_len if kind == FINITE_BLOCKLENGTH else math.inf
        self.block_err = block_err
        self.qinv_rho = q_inverse(block_err) if kind == FINITE_BLOCKLENGTH else None

    @classmethod
    def from_config(cls, cfg) -> "RateModel":
        if cfg.finite_blocklength:
            return cls(FINITE_BLOCKLENGTH, cfg.W, cfg.N0, cfg.codeword_len, cfg.block_err)
        return cls(SHANNON, cfg.W, cfg.N0, math.inf, cfg.block_err)

    def rate(self, p: ArrayLike, g2: ArrayLike) -> ArrayLike:
        if self.kind == SHANNON:
            return rate_shannon(p, g2, self.W, self.N0)
        return rate_finite(
            p, g2, self.W, self.N0, self.codeword_len, self.block_err, self.qinv_rho
        )

    def slope_bound(self, g2: float) -> float:
        """dR/dp at p = 0 for the Shannon form, g2 / (N0 ln 2).

        This bounds the finite-blocklength slope too: its dispersion penalty
        grows with snr, so it only lowers the derivative.
        """
        return float(g2 / (self.N0 * math.log(2.0)))

    def secant_bound(self, g2_max: float, levels: np.ndarray, grid_points: int = 257) -> float:
        """Largest secant slope (R(P_k)-R(P_j))/(P_k-P_j) over level pairs
        and gains in [0, g2_max].

        Shannon secants grow with the gain, so the cap is exact there. The
        finite-blocklength secants are maximised on a gain grid and padded by
        the largest step between neighbouring grid values.
        """
        levels = np.asarray(levels, dtype=float)
        j, k = np.triu_indices(len(levels), k=1)
        spans = levels[k] - levels[j]

        if self.kind == SHANNON:
            rates = self.rate(levels, g2_max)
            return float(np.max((rates[k] - rates[j]) / spans))

        gains = np.linspace(0.0, g2_max, grid_points)
        rates = self.rate(levels[None, :], gains[:, None])
        secants = (rates[:, k] - rates[:, j]) / spans[None, :]
        best = secants.max(axis=1)
        pad = float(np.max(np.abs(np.diff(best)))) if grid_points > 1 else 0.0
        return float(best.max() + pad)

    def describe(self) -> str:
        if self.kind == SHANNON:
            return f"shannon(W={self.W:g} Hz)"
        return f"finite_blocklength(W={self.W:g} Hz, L={self.codeword_len:g}, rho={self.block_err:g})"


@enforce_types
def power_levels(P_m: float, count: int) -> np.ndarray:
    """Uniformly spaced per-link power levels {0, P_m/(count-1), ..., P_m}."""
    if count < 2:
        raise RateError(f"Need at least two power levels, got {count}")
    return np.linspace(0.0, P_m, count)
