#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Empirical attraction statistics.

    Around the post-warmup median of each queue and battery, the frequency
    f(m) of slots deviating by more than m should fall off quickly in m.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.engine.records import Trace
from wpcn_lib.engine.stability import detect_stability
from wpcn_lib.exceptions import UnstableTraceError

MARGIN_POINTS = 64


@dataclass(frozen=True, eq=False)
class AttractionStats:
    queue_levels: np.ndarray  # (N, S) post-warmup medians, bits
    queue_iqr: np.ndarray  # (N, S)
    queue_margins: np.ndarray  # (K,) bits
    queue_curves: np.ndarray  # (N, S, K)
    joint_queue_curve: np.ndarray  # (K,) any queue off by more than m
    battery_levels: np.ndarray  # (N,) joules
    battery_iqr: np.ndarray  # (N,)
    battery_margins: np.ndarray  # (K,) joules
    battery_curves: np.ndarray  # (N, K)
    joint_battery_curve: np.ndarray  # (K,)
    slots: int

    @staticmethod
    def log_curve(curve: np.ndarray) -> np.ndarray:
        """log10 f(m); zero frequencies map to -inf."""
        with np.errstate(divide="ignore"):
            return np.log10(curve)


def deviation_frequency(values: np.ndarray, level: float, margins: np.ndarray) -> np.ndarray:
    """Fraction of samples with |value - level| > m, for each margin m."""
    if not len(values):
        return np.zeros(len(margins))
    deviations = np.sort(np.abs(values - level))
    below = np.searchsorted(deviations, margins, side="right")
    return 1.0 - below / len(deviations)


def strictly_decreasing(curve: np.ndarray) -> bool:
    """True when the curve falls at every margin until it reaches zero."""
    positive = curve[curve > 0]
    return bool(np.all(np.diff(positive) < 0))


def _margins(max_deviation: float, points: int) -> np.ndarray:
    return np.linspace(0.0, max(max_deviation, 0.0), points)


def _curves(series: np.ndarray, margins: np.ndarray):
    """series (T, k) -> medians (k,), iqr (k,), curves (k, K), joint (K,)."""
    levels = np.median(series, axis=0)
    q75, q25 = np.percentile(series, [75, 25], axis=0)
    curves = np.array(
        [deviation_frequency(series[:, i], levels[i], margins) for i in range(series.shape[1])]
    ).reshape(series.shape[1], len(margins))
    joint_deviation = np.max(np.abs(series - levels), axis=1) if series.shape[1] else np.zeros(len(series))
    joint = deviation_frequency(joint_deviation, 0.0, margins)
    return levels, q75 - q25, curves, joint


@enforce_types
def attraction_stats(
    trace: Trace,
    warmup: int,
    stable: Optional[bool] = None,
    points: int = MARGIN_POINTS,
) -> AttractionStats:
    """Deviation-frequency curves of real queues and batteries after `warmup`.

    Raises UnstableTraceError when the backlog is still drifting, unless the
    caller already established stability.
    """
    T = len(trace)
    start = min(warmup, T)
    U = trace.U[start:T]
    B = trace.B[start:T]
    if stable is None:
        result = detect_stability(U.sum(axis=(1, 2)))
        if not result.stable:
            raise UnstableTraceError(
                f"Backlog drifts after slot {start}: slope {result.slope:.4g} bits/slot "
                f"(stderr {result.stderr:.3g}), rise {result.rise:.4g} bits over the tail window"
            )
    elif not stable:
        raise UnstableTraceError("Trace flagged unstable")

    N, S = trace.N, trace.S
    queues = U.reshape(len(U), N * S)
    queue_dev = float(np.max(np.abs(queues - np.median(queues, axis=0)))) if queues.size else 0.0
    battery_dev = float(np.max(np.abs(B - np.median(B, axis=0)))) if B.size else 0.0
    queue_margins = _margins(queue_dev, points)
    battery_margins = _margins(battery_dev, points)

    if len(U):
        q_levels, q_iqr, q_curves, q_joint = _curves(queues, queue_margins)
        b_levels, b_iqr, b_curves, b_joint = _curves(B, battery_margins)
    else:
        q_levels, q_iqr = np.zeros(N * S), np.zeros(N * S)
        q_curves, q_joint = np.zeros((N * S, points)), np.zeros(points)
        b_levels, b_iqr = np.zeros(N), np.zeros(N)
        b_curves, b_joint = np.zeros((N, points)), np.zeros(points)

    return AttractionStats(
        queue_levels=q_levels.reshape(N, S),
        queue_iqr=q_iqr.reshape(N, S),
        queue_margins=queue_margins,
        queue_curves=q_curves.reshape(N, S, points),
        joint_queue_curve=q_joint,
        battery_levels=b_levels,
        battery_iqr=b_iqr,
        battery_margins=battery_margins,
        battery_curves=b_curves,
        joint_battery_curve=b_joint,
        slots=len(U),
    )
