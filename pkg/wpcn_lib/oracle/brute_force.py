#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Exhaustive max-weight scheduling for small instances."""
import itertools
from typing import List, Tuple

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.controller.scheduling import link_scores, matching_objective
from wpcn_lib.exceptions import OracleError
from wpcn_lib.network.topology import Topology
from wpcn_lib.rate.rate_model import RateModel

MAX_LINKS = 10
MAX_LEVELS = 4


@enforce_types
def enumerate_matchings(topo: Topology) -> List[Tuple[int, ...]]:
    """Every set of pairwise non-conflicting links, as sorted index tuples."""
    matchings: List[Tuple[int, ...]] = []

    def extend(start: int, chosen: List[int]) -> None:
        matchings.append(tuple(chosen))
        for link in range(start, topo.L):
            if not any(topo.conflicts[link, c] for c in chosen):
                chosen.append(link)
                extend(link + 1, chosen)
                chosen.pop()

    extend(0, [])
    return matchings


@enforce_types
def brute_force_schedule(
    Z: np.ndarray,
    W_l: np.ndarray,
    g2: np.ndarray,
    levels: np.ndarray,
    C: float,
    topo: Topology,
    rate_model: RateModel,
) -> float:
    """Smallest objective over all matchings and all level assignments."""
    if topo.L > MAX_LINKS or len(levels) > MAX_LEVELS:
        raise OracleError(
            f"Brute force limited to {MAX_LINKS} links and {MAX_LEVELS} levels, "
            f"got {topo.L} and {len(levels)}"
        )
    scores = link_scores(Z, W_l, g2, rate_model, levels, C, topo).scores

    best = 0.0
    for matching in enumerate_matchings(topo):
        for assignment in itertools.product(range(len(levels)), repeat=len(matching)):
            value = matching_objective(scores, list(zip(matching, assignment)))
            best = min(best, value)
    return best
