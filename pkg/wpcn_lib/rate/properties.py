#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Grid checks of the structural properties the controller relies on."""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.exceptions import RateError
from wpcn_lib.rate.rate_model import RateModel

logger = logging.getLogger(__name__)

ZERO_POWER = "zero_power_zero_rate"
LIPSCHITZ = "lipschitz_bound"
INTERFERENCE = "interference_monotone"
MONOTONE = "nondecreasing_in_power"

SLOPE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class PropertyViolation:
    property: str
    p: float
    g: float
    observed: float
    bound: float


@dataclass
class PropertyReport:
    violations: List[PropertyViolation] = field(default_factory=list)
    max_slope: float = 0.0
    checked_points: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def failed_properties(self) -> List[str]:
        return sorted({v.property for v in self.violations})

    def as_dictionary(self) -> dict:
        return {
            "passed": self.passed,
            "max_slope": self.max_slope,
            "checked_points": self.checked_points,
            "violations": [v.__dict__ for v in self.violations],
        }


@enforce_types
def check_properties(
    model: RateModel,
    g_cap: float,
    P_m: float,
    grid_size: int,
    delta: float,
    levels: Optional[np.ndarray] = None,
) -> PropertyReport:
    """Verify zero-power, Lipschitz, monotonicity and interference properties.

    Without `levels` the Lipschitz check uses forward differences at every
    grid point of [0, P_m] x [0, g_cap]; with `levels` it checks the secants
    between level pairs only, which is all a finite power set needs.
    """
    if grid_size < 10:
        raise RateError(f"grid_size must be at least 10, got {grid_size}")

    report = PropertyReport()
    powers = np.linspace(0.0, P_m, grid_size)
    gains = np.linspace(0.0, g_cap, grid_size)
    report.checked_points = grid_size * grid_size

    zero_rates = np.atleast_1d(model.rate(0.0, gains))
    for g, r in zip(gains, zero_rates):
        if r != 0.0:
            report.violations.append(PropertyViolation(ZERO_POWER, 0.0, float(g), float(r), 0.0))

    rates = model.rate(powers[None, :], gains[:, None])
    steps = np.diff(rates, axis=1)
    for gi, pi in zip(*np.nonzero(steps < 0)):
        report.violations.append(
            PropertyViolation(
                MONOTONE, float(powers[pi + 1]), float(gains[gi]), float(steps[gi, pi]), 0.0
            )
        )

    bound = delta * (1 + SLOPE_TOLERANCE)
    if levels is None:
        eps = P_m * 1e-9
        slopes = (model.rate(powers[None, :] + eps, gains[:, None]) - rates) / eps
        grid_p = np.broadcast_to(powers[None, :], slopes.shape)
    else:
        levels = np.asarray(levels, dtype=float)
        j, k = np.triu_indices(len(levels), k=1)
        level_rates = model.rate(levels[None, :], gains[:, None])
        slopes = (level_rates[:, k] - level_rates[:, j]) / (levels[k] - levels[j])[None, :]
        grid_p = np.broadcast_to(levels[k][None, :], slopes.shape)

    report.max_slope = float(slopes.max()) if slopes.size else 0.0
    for gi, pi in zip(*np.nonzero(slopes > bound)):
        report.violations.append(
            PropertyViolation(
                LIPSCHITZ, float(grid_p[gi, pi]), float(gains[gi]), float(slopes[gi, pi]), bound
            )
        )

    # orthogonal links: raising another link's power leaves this rate unchanged
    again = model.rate(powers[None, :], gains[:, None])
    for gi, pi in zip(*np.nonzero(again != rates)):
        report.violations.append(
            PropertyViolation(
                INTERFERENCE, float(powers[pi]), float(gains[gi]), float(again[gi, pi]), float(rates[gi, pi])
            )
        )

    if not report.passed:
        logger.warning(f"Rate properties violated: {', '.join(report.failed_properties())}")
    return report
