#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Backlog stability detection from a time series."""
from dataclasses import asdict, dataclass
from typing import Any, Dict

import numpy as np
from enforce_typing import enforce_types
from scipy.stats import linregress

BATCHES = 20
TAIL_FRACTION = 0.5
RISE_TOLERANCE = 0.05


@dataclass(frozen=True)
class StabilityResult:
    stable: bool
    slope: float  # backlog units per slot over the tail window
    stderr: float
    rise: float  # fitted change across the tail window
    level: float  # mean over the tail window

    def as_dictionary(self) -> Dict[str, Any]:
        return asdict(self)


@enforce_types
def detect_stability(
    series: np.ndarray,
    batches: int = BATCHES,
    tail_fraction: float = TAIL_FRACTION,
    rise_tolerance: float = RISE_TOLERANCE,
) -> StabilityResult:
    """Batch means over the series, then a linear fit over the tail batches.

    The series is stable when the fitted slope is not positive beyond two
    standard errors, or when the fitted rise over the tail window is small
    relative to its mean level.
    """
    series = np.asarray(series, dtype=float)
    if len(series) < 2 * batches:
        points = series
        width = 1
    else:
        width = len(series) // batches
        points = series[: width * batches].reshape(batches, width).mean(axis=1)

    tail = points[int(len(points) * (1 - tail_fraction)) :]
    if len(tail) < 3:
        level = float(tail.mean()) if len(tail) else 0.0
        return StabilityResult(stable=True, slope=0.0, stderr=0.0, rise=0.0, level=level)

    x = np.arange(len(tail), dtype=float) * width
    if np.all(tail == tail[0]):
        return StabilityResult(stable=True, slope=0.0, stderr=0.0, rise=0.0, level=float(tail[0]))
    fit = linregress(x, tail)
    slope, stderr = float(fit.slope), float(fit.stderr)
    rise = slope * float(x[-1] - x[0])
    level = float(tail.mean())
    stable = slope <= 2 * stderr or rise <= rise_tolerance * abs(level)
    return StabilityResult(stable=bool(stable), slope=slope, stderr=stderr, rise=rise, level=level)
