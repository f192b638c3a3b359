#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Max-weight data-link scheduling under the node-exclusive model.

    Every link first picks its best power level on its own; the active set is
    then a maximum-weight matching over the links with a positive best score.
    Totals are summed with math.fsum over the shared per-link score table so
    that every backend, and the brute-force checker, see the same numbers.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.exceptions import SchedulingError
from wpcn_lib.network.topology import Topology
from wpcn_lib.rate.rate_model import RateModel

logger = logging.getLogger(__name__)

EXACT = "exact"
GREEDY = "greedy"
AUTO = "auto"
EXACT_LINK_LIMIT = 20


@dataclass(frozen=True, eq=False)
class LinkScores:
    rates: np.ndarray  # (L, K) bits/s per link and power level
    scores: np.ndarray  # (L, K) W_l R - C Z_head p
    levels: np.ndarray  # (K,)


@dataclass(frozen=True, eq=False)
class Schedule:
    p: np.ndarray  # (L,) watts, zero on inactive links
    rates: np.ndarray  # (L,) scheduled bits/s, zero on inactive links
    best_scores: np.ndarray  # (L,) b_l, zero where no level pays off
    active: Tuple[int, ...]  # link indices in increasing order
    F_d: float
    backend: str


@enforce_types
def link_scores(
    Z: np.ndarray,
    W_l: np.ndarray,
    g2: np.ndarray,
    rate_model: RateModel,
    levels: np.ndarray,
    C: float,
    topo: Topology,
) -> LinkScores:
    """Score every (link, power level) pair: W_l R_l(p) - C Z_head p."""
    if not len(levels):
        raise SchedulingError("Power level set is empty")
    rates = np.asarray(rate_model.rate(levels[None, :], g2[:, None]), dtype=float)
    rates = rates.reshape(topo.L, len(levels))
    cost = C * Z[topo.head][:, None] * levels[None, :]
    return LinkScores(rates=rates, scores=W_l[:, None] * rates - cost, levels=levels)


def _best_levels(table: LinkScores) -> Tuple[np.ndarray, np.ndarray]:
    """Per-link best level (lowest power on ties) and its score."""
    if table.scores.shape[0] == 0:
        return np.zeros(0, dtype=int), np.zeros(0)
    best = np.argmax(table.scores, axis=1)
    return best, table.scores[np.arange(len(best)), best]


def _exact_matching(candidates: List[int], weights: np.ndarray, conflicts: np.ndarray) -> Tuple[int, ...]:
    """Branch and bound over candidate links in index order.

    Maximizes the fsum of the selected weights; among equal totals the
    lexicographically smallest index tuple wins.
    """
    best_total = 0.0
    best_set: Tuple[int, ...] = ()
    # suffix sums of the remaining weights bound what a branch can still add
    suffix = [0.0] * (len(candidates) + 1)
    for i in range(len(candidates) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + float(weights[candidates[i]])

    def visit(i: int, chosen: List[int]) -> None:
        nonlocal best_total, best_set
        total = math.fsum(float(weights[c]) for c in chosen)
        if total > best_total or (total == best_total and tuple(chosen) < best_set):
            best_total, best_set = total, tuple(chosen)
        if i == len(candidates):
            return
        if total + suffix[i] < best_total * (1 - 1e-12) - 1e-300:
            return
        for j in range(i, len(candidates)):
            link = candidates[j]
            if any(conflicts[link, c] for c in chosen):
                continue
            chosen.append(link)
            visit(j + 1, chosen)
            chosen.pop()

    visit(0, [])
    return best_set


def _greedy_matching(candidates: List[int], weights: np.ndarray, conflicts: np.ndarray) -> Tuple[int, ...]:
    """Heaviest-first maximal matching; at least half the optimum."""
    order = sorted(candidates, key=lambda link: (-float(weights[link]), link))
    chosen: List[int] = []
    for link in order:
        if not any(conflicts[link, c] for c in chosen):
            chosen.append(link)
    return tuple(sorted(chosen))


@enforce_types
def select_matching(
    weights: np.ndarray, conflicts: np.ndarray, backend: str = AUTO
) -> Tuple[Tuple[int, ...], str]:
    """Choose the active links among those with positive weight."""
    candidates = [int(link) for link in np.nonzero(weights > 0)[0]]
    if backend == AUTO:
        backend = EXACT if len(candidates) <= EXACT_LINK_LIMIT else GREEDY
    if backend == EXACT:
        return _exact_matching(candidates, weights, conflicts), EXACT
    if backend == GREEDY:
        return _greedy_matching(candidates, weights, conflicts), GREEDY
    raise SchedulingError(f"Unknown scheduling backend {backend}")


def matching_objective(scores: np.ndarray, assignment: Sequence[Tuple[int, int]]) -> float:
    """Objective of (link, level) pairs: minus the fsum of their scores."""
    return -math.fsum(float(scores[link, level]) for link, level in assignment)


@enforce_types
def schedule_data(
    Z: np.ndarray,
    W_l: np.ndarray,
    g2: np.ndarray,
    rate_model: RateModel,
    levels: np.ndarray,
    C: float,
    topo: Topology,
    backend: str = AUTO,
) -> Schedule:
    """Solve the per-slot max-weight power allocation.

    Returns the power vector, scheduled rates, and F_d = -(total selected
    score), which is zero when no link is worth activating.
    """
    table = link_scores(Z, W_l, g2, rate_model, levels, C, topo)
    best, best_scores = _best_levels(table)
    best_scores = np.where(best_scores > 0, best_scores, 0.0)

    active, used = select_matching(best_scores, topo.conflicts, backend)

    p = np.zeros(topo.L)
    rates = np.zeros(topo.L)
    for link in active:
        p[link] = levels[best[link]]
        rates[link] = table.rates[link, best[link]]
    F_d = matching_objective(table.scores, [(link, int(best[link])) for link in active])

    if active:
        logger.debug(
            f"scheduled links {[topo.link_ids[l] for l in active]} ({used}), F_d={F_d:.6g}"
        )
    return Schedule(
        p=p, rates=rates, best_scores=best_scores, active=active, F_d=F_d, backend=used
    )
