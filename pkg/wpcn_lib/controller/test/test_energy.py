#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import math

import numpy as np
import pytest

from wpcn_lib.controller.energy import (
    energy_intake_cap,
    energy_objective,
    energy_weight,
    floor_safe_cap,
    intake_rule,
    schedule_eap,
    time_share,
)
from wpcn_lib.exceptions import ImbalanceFloorViolated

GAINS = np.array([1e-6, 2e-6])
Z = np.array([3e4, 1e4])
C = 5e2  # weight = C * (0.03 + 0.02) = 25


@pytest.mark.unit
def test_energy_weight():
    assert energy_weight(GAINS, Z, C) == pytest.approx(25.0)


@pytest.mark.unit
def test_schedule_eap():
    assert schedule_eap(10.0, GAINS, Z, C, 4.0) == 4.0
    assert schedule_eap(30.0, GAINS, Z, C, 4.0) == 0.0
    assert schedule_eap(energy_weight(GAINS, Z, C), GAINS, Z, C, 4.0) == 0.0


@pytest.mark.unit
def test_energy_objective():
    assert energy_objective(0.0, 10.0, GAINS, Z, C) == 0.0
    assert energy_objective(4.0, 10.0, GAINS, Z, C) == pytest.approx(4.0 * (10.0 - 25.0))


@pytest.mark.unit
def test_time_share():
    assert time_share(-1.0, -2.0, 1e-3) == (1e-3, 0.0)
    assert time_share(-2.0, -1.0, 1e-3) == (0.0, 1e-3)
    # ties go to energy
    assert time_share(0.0, 0.0, 1e-3) == (1e-3, 0.0)


@pytest.mark.unit
def test_intake_rule():
    cap = intake_rule(np.array([5.0, 3.0]), 1.0, 2.0)

    assert cap.tolist() == [2.0, 1.0]
    assert np.all(intake_rule(np.array([5.0]), 1.0, 0.0) == math.inf)


@pytest.mark.unit
def test_intake_rule_floor():
    with pytest.raises(ImbalanceFloorViolated) as err:
        intake_rule(np.array([5.0, 0.5]), 1.0, 2.0)
    assert "Z_2" in str(err.value)


@pytest.mark.unit
def test_energy_intake_cap():
    cap = energy_intake_cap(np.array([0.5, 4.0]), np.array([5.0, 3.0]), 1.0, 2.0)

    assert cap.tolist() == [0.5, 1.0]


@pytest.mark.unit
def test_floor_safe_cap_keeps_the_floor_after_storing():
    rng = np.random.default_rng(7)
    mu_max, C_big = 2425.3401692343537, 1.1e13
    U_total = rng.uniform(mu_max + 10.0, 2e7, size=5000)
    E_stored = rng.uniform(0.0, 1.0, size=5000) * (U_total - mu_max - 1.0) / C_big
    Z_now = U_total - C_big * E_stored
    cap = intake_rule(Z_now, mu_max, C_big)

    safe = floor_safe_cap(cap, U_total, E_stored, mu_max, C_big)

    assert np.all(U_total - C_big * (E_stored + safe) >= mu_max)
    assert np.all(safe <= cap)
    assert np.all(safe >= cap * (1 - 1e-6))


@pytest.mark.unit
def test_floor_safe_cap_leaves_exact_caps_alone():
    U_total = np.array([6.0, 3.0])
    E_stored = np.array([0.5, 1.0])
    cap = intake_rule(U_total - 2.0 * E_stored, 1.0, 2.0)

    assert floor_safe_cap(cap, U_total, E_stored, 1.0, 2.0).tolist() == cap.tolist()
    inf_cap = np.array([math.inf])
    assert floor_safe_cap(inf_cap, np.array([5.0]), np.array([0.0]), 1.0, 0.0)[0] == math.inf
