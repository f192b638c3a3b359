#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Backpressure routing weights and per-link stream selection."""
from typing import Tuple

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.network.topology import Topology


@enforce_types
def routing_weights(U: np.ndarray, Z: np.ndarray, topo: Topology) -> np.ndarray:
    """W[l, s] = Z[head] - Z[tail] + U[head, s] - U[tail, s], shape (L, S)."""
    if topo.L == 0:
        return np.zeros((0, U.shape[1]))
    imbalance = Z[topo.head] - Z[topo.tail]
    return imbalance[:, None] + (U[topo.head] - U[topo.tail])


@enforce_types
def select_streams(W: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Pick the heaviest stream per link.

    Returns (stream index per link, W_l per link) where W_l is clamped at 0.
    Ties go to the lowest stream index.
    """
    if W.shape[0] == 0 or W.shape[1] == 0:
        return np.zeros(W.shape[0], dtype=int), np.zeros(W.shape[0])
    streams = np.argmax(W, axis=1)
    best = W[np.arange(W.shape[0]), streams]
    return streams, np.maximum(best, 0.0)
