#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from tests.resources.helper_functions import (
    forged_trace,
    path_topology,
    random_psd,
    small_config,
)


@pytest.mark.unit
def test_small_config():
    config_dict = small_config("fig2a", horizon=50, settings={"policy.V": 5e10})

    assert config_dict["topology"]["preset"] == "fig2a"
    assert config_dict["run"]["horizon"] == 50
    assert config_dict["run"]["arrival_kbps"] == [1.0, 1.0]
    assert config_dict["policy"]["V"] == 5e10


@pytest.mark.unit
def test_path_topology():
    topo = path_topology(3)

    assert (topo.N, topo.L, topo.S) == (4, 3, 1)
    assert list(topo.head) == [0, 1, 2]
    assert list(topo.tail) == [1, 2, 3]
    assert topo.link_conflicts() == [(1, 2), (2, 3)]


@pytest.mark.unit
def test_random_psd():
    A = random_psd(np.random.default_rng(1), 4)

    assert np.allclose(A, A.conj().T)
    assert np.all(np.linalg.eigvalsh(A) >= -1e-9)


@pytest.mark.unit
def test_forged_trace():
    trace = forged_trace(path_topology(2), 5, Z=1.0, E_virtual=2.0, B=2.0)

    assert len(trace) == 5
    assert np.all(trace.energy_mode)
    assert np.all(trace.Z == 1.0)
