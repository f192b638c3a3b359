#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import math
from typing import List, Tuple, Union

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.exceptions import ChannelError
from wpcn_lib.network.topology import Topology
from wpcn_lib.units import SPEED_OF_LIGHT


@enforce_types
def path_loss(
    distance: Union[int, float],
    carrier: float,
    exponent: float = 2.0,
    correction: float = 1.0,
) -> float:
    """Free-space (Friis) power gain (c / (4 pi f d)) ** exponent."""
    if not distance > 0:
        raise ChannelError(f"Distance must be positive, got {distance}")
    if not carrier > 0:
        raise ChannelError(f"Carrier frequency must be positive, got {carrier}")
    return float(correction * (SPEED_OF_LIGHT / (4 * math.pi * carrier * distance)) ** exponent)


@enforce_types
def topology_path_losses(
    topo: Topology, carrier: float, exponent: float = 2.0
) -> Tuple[np.ndarray, np.ndarray]:
    """Mean power gains (beta_g per data link, beta_h per node)."""
    beta_g: List[float] = [
        path_loss(float(length), carrier, exponent) for length in topo.link_lengths
    ]
    beta_h: List[float] = [
        path_loss(float(d), carrier, exponent) for d in topo.eap_node_distances
    ]
    return np.array(beta_g, dtype=float), np.array(beta_h, dtype=float)
