#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Bernoulli packet arrivals at stream sources."""
import json

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.exceptions import ConfigError
from wpcn_lib.network.topology import Topology


@enforce_types
def arrival_probabilities(rates: np.ndarray, A_m: float, tau_f: float) -> np.ndarray:
    """Per-stream probability that a full A_m-bit packet arrives in a slot."""
    load = rates * tau_f
    too_high = np.nonzero(load > A_m)[0]
    if len(too_high):
        s = int(too_high[0])
        raise ConfigError(
            json.dumps({f"run.arrival_kbps[{s}]": "exceeds max_arrival_bits per slot"})
        )
    return load / A_m


@enforce_types
def sample_arrivals(
    rng: np.random.Generator,
    rates: np.ndarray,
    A_m: float,
    tau_f: float,
    topo: Topology,
) -> np.ndarray:
    """Bits arriving this slot, shape (N, S); nonzero only at each stream's source."""
    probabilities = arrival_probabilities(rates, A_m, tau_f)
    hits = rng.random(topo.S) < probabilities
    return topo.source_mask * np.where(hits, A_m, 0.0)[None, :]
