#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from tests.resources.helper_functions import setup_run, simulate, small_config
from wpcn_lib.oracle.lemma_checks import check_battery, check_lemma2

LIMITS = {"limits.buffer_cap_kbytes": 200.0, "limits.battery_cap_mj": 0.8}


@pytest.mark.integration
@pytest.mark.parametrize("topology", ["line3", "ring5", "fig2a"])
@pytest.mark.parametrize("limited", [False, True])
def test_controller_guarantees_hold(topology, limited):
    config_dict = small_config(
        topology, horizon=500, arrival_kbps=2.0, settings=LIMITS if limited else None
    )
    _, topo, _, constants = setup_run(config_dict)

    trace, summary = simulate(config_dict)

    assert check_lemma2(trace, topo, constants) == []
    assert check_battery(trace) == []
    assert np.all(trace.B >= 0)
    if limited:
        assert np.all(trace.U <= 200.0 * 8000)
        assert trace.B.max() <= 0.8e-3 * (1 + 1e-12)
    else:
        assert summary.total_dropped == 0.0


@pytest.mark.integration
def test_guarantees_hold_with_imperfect_csi():
    config_dict = small_config(
        horizon=400,
        settings={
            "physics.pilot_energy_data_link_uj": 10.0,
            "physics.pilot_energy_energy_link_uj": 10.0,
            "physics.rician_k_db": 0.0,
        },
    )
    _, topo, _, constants = setup_run(config_dict)

    trace, _ = simulate(config_dict)

    assert check_lemma2(trace, topo, constants) == []
    assert check_battery(trace) == []
    # realized rates never exceed what was scheduled
    assert np.all(trace.realized <= trace.rate)


@pytest.mark.integration
def test_guarantees_hold_with_finite_blocklength():
    config_dict = small_config(horizon=400, settings={"physics.codeword_length": 200.0})
    _, topo, _, constants = setup_run(config_dict)

    trace, _ = simulate(config_dict)

    assert check_lemma2(trace, topo, constants) == []


@pytest.mark.integration
def test_generous_limits_leave_the_controller_unchanged():
    unlimited, _ = simulate(small_config("fig2a", horizon=300))
    limited, summary = simulate(
        small_config(
            "fig2a",
            horizon=300,
            settings={"limits.buffer_cap_kbytes": 1e9, "limits.battery_cap_mj": 1e9},
        )
    )

    assert summary.total_dropped == 0.0
    assert np.array_equal(limited.energy_mode, unlimited.energy_mode)
    assert np.array_equal(limited.Z, unlimited.Z)
    assert np.array_equal(limited.U_virtual, unlimited.U_virtual)
    assert np.array_equal(limited.E_virtual, unlimited.E_virtual)
    assert np.array_equal(limited.p, unlimited.p)


@pytest.mark.integration
@pytest.mark.parametrize("topology", ["line3", "ring5", "fig2a"])
def test_default_config_survives_long_runs(topology):
    config_dict = small_config(topology, horizon=2000)
    _, topo, _, constants = setup_run(config_dict)

    trace, _ = simulate(config_dict)

    assert check_lemma2(trace, topo, constants) == []
    assert np.all(trace.Z >= constants.mu_max)


@pytest.mark.integration
def test_guarantees_hold_without_line_of_sight():
    config_dict = small_config("ring5", horizon=500, settings={"physics.rician_k_db": None})
    _, topo, _, constants = setup_run(config_dict)

    trace, _ = simulate(config_dict)

    assert check_lemma2(trace, topo, constants) == []
    assert check_battery(trace) == []
