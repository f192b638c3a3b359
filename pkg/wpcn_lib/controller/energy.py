#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""E-AP power decision, energy/data time sharing and per-node energy intake."""
import math
from typing import Tuple

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.exceptions import ImbalanceFloorViolated

FLOOR_SAFE_STEPS = 64


@enforce_types
def energy_weight(gains: np.ndarray, Z: np.ndarray, C: float) -> float:
    """C sum_n gains_n Z_n: what one watt of E-AP power is worth to the nodes."""
    return C * math.fsum((gains * Z).tolist())


@enforce_types
def schedule_eap(V: float, gains: np.ndarray, Z: np.ndarray, C: float, P_APm: float) -> float:
    """Full power iff V < C sum gains Z, else off."""
    return P_APm if V < energy_weight(gains, Z, C) else 0.0


@enforce_types
def energy_objective(P_AP: float, V: float, gains: np.ndarray, Z: np.ndarray, C: float) -> float:
    """F_e = P_AP (V - C sum gains Z); zero when the E-AP is off."""
    if P_AP == 0.0:
        return 0.0
    return P_AP * (V - energy_weight(gains, Z, C))


@enforce_types
def time_share(F_d: float, F_e: float, tau_f: float) -> Tuple[float, float]:
    """(tau_e, tau_d): the whole slot goes to energy iff F_e <= F_d."""
    if F_e <= F_d:
        return tau_f, 0.0
    return 0.0, tau_f


@enforce_types
def intake_rule(Z: np.ndarray, mu_max: float, C: float) -> np.ndarray:
    """Per-node storable energy (Z_n - mu_max) / C.

    Raises ImbalanceFloorViolated if some Z_n is below mu_max.
    """
    low = np.nonzero(Z < mu_max)[0]
    if len(low):
        n = int(low[0])
        raise ImbalanceFloorViolated(f"Z_{n + 1}={Z[n]!r} < mu_max={mu_max!r}")
    if C == 0.0:
        return np.full(Z.shape, math.inf)
    return (Z - mu_max) / C


@enforce_types
def energy_intake_cap(E: np.ndarray, Z: np.ndarray, mu_max: float, C: float) -> np.ndarray:
    """phi_in_n = min(E_n, (Z_n - mu_max) / C)."""
    return np.minimum(E, intake_rule(Z, mu_max, C))


@enforce_types
def floor_safe_cap(
    cap: np.ndarray, U_total: np.ndarray, E_stored: np.ndarray, mu_max: float, C: float
) -> np.ndarray:
    """Shrink each intake cap until storing all of it keeps
    U_total - C (E_stored + cap) >= mu_max in floating point.

    (Z_n - mu_max) / C lands Z_n exactly on the floor, where rounding in
    C E can leave it a few ulps below. Arrivals only raise U_total, so
    checking against the current queue totals is enough.
    """
    safe = np.array(cap, dtype=float)
    if C == 0.0:
        return safe
    for _ in range(FLOOR_SAFE_STEPS):
        post = U_total - C * (E_stored + safe)
        bad = np.isfinite(safe) & (safe > 0.0) & (post < mu_max)
        if not bad.any():
            return safe
        deficit = (mu_max - post[bad]) / C
        safe[bad] = np.maximum(np.nextafter(safe[bad] - deficit, 0.0), 0.0)
    # storing nothing leaves Z where it was, which is on or above the floor
    post = U_total - C * (E_stored + safe)
    safe[np.isfinite(safe) & (post < mu_max)] = 0.0
    return safe
