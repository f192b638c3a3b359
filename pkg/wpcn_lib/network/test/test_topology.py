#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from wpcn_lib.exceptions import TopologyError
from wpcn_lib.network.topology import (
    build_topology,
    preset_topology_spec,
    topology_from_config,
)


def _spec(**changes):
    spec = {
        "node_count": 3,
        "links": [[1, 1, 2, 4.0], [2, 2, 3, 4.0]],
        "streams": [[1, 1, 3]],
        "eap_antennas": 4,
        "eap_distances_m": [30.0, 30.0, 30.0],
    }
    spec.update(changes)
    return spec


@pytest.mark.unit
def test_fig2a_preset():
    topo = build_topology(preset_topology_spec("fig2a"))

    assert (topo.N, topo.L, topo.S, topo.M) == (9, 12, 2, 20)
    assert [(s.source, s.sink) for s in topo.streams] == [(1, 6), (2, 9)]
    assert topo.source_mask[0, 0] and topo.source_mask[1, 1]
    assert topo.sink_mask[5, 0] and topo.sink_mask[8, 1]
    assert topo.sink_mask.sum() == 2


@pytest.mark.unit
def test_preset_lengths_scale():
    spec = preset_topology_spec("fig2a", hop_length=4.0, distance_scale=2.0)

    assert spec["links"][0][3] == 8.0
    assert spec["links"][1][3] == pytest.approx(8.0 * np.sqrt(2.0))
    assert spec["eap_distances_m"][0] == 68.0


@pytest.mark.unit
def test_degenerate_single_node():
    topo = build_topology(
        {
            "node_count": 1,
            "links": [],
            "streams": [],
            "eap_antennas": 1,
            "eap_distances_m": [10.0],
        }
    )

    assert (topo.N, topo.L, topo.S) == (1, 0, 0)
    assert topo.conflicts.shape == (0, 0)
    assert topo.link_conflicts() == []


@pytest.mark.unit
def test_conflicts_are_shared_nodes():
    topo = build_topology(preset_topology_spec("line3"))

    assert topo.conflicts.tolist() == [[False, True], [True, False]]
    assert topo.link_conflicts() == [(1, 2)]
    assert topo.incoming == [[], [0], [1]]
    assert topo.outgoing == [[0], [1], []]


@pytest.mark.unit
@pytest.mark.parametrize(
    "changes, message",
    [
        ({"links": [[1, 2, 2, 4.0]]}, "self-loop"),
        ({"links": [[1, 1, 2, 4.0], [1, 2, 3, 4.0]]}, "duplicate link ids"),
        ({"links": [[1, 1, 7, 4.0]]}, "unknown node 7"),
        ({"links": [[1, 1, 2, 0.0]]}, "length must be positive"),
        ({"streams": [[1, 2, 2]]}, "source equal to sink"),
        ({"streams": [[1, 1, 9]]}, "unknown node 9"),
        ({"eap_distances_m": [30.0, 30.0]}, "needs 3 entries"),
        ({"eap_distances_m": [30.0, -1.0, 30.0]}, "E-AP distances must be positive"),
    ],
)
def test_invalid_topologies(changes, message):
    with pytest.raises(TopologyError) as err:
        build_topology(_spec(**changes))
    assert message in str(err.value)


@pytest.mark.unit
def test_missing_keys():
    with pytest.raises(TopologyError):
        build_topology({"node_count": 3})


@pytest.mark.unit
def test_custom_topology_from_config():
    section = {
        "preset": None,
        "distance_scale": 2.0,
        "eap_antennas": 2,
        **{k: v for k, v in _spec().items() if k != "eap_antennas"},
    }
    topo = topology_from_config(section)

    assert topo.M == 2
    assert topo.link_lengths.tolist() == [8.0, 8.0]
    assert topo.eap_node_distances == [60.0, 60.0, 60.0]


@pytest.mark.unit
def test_unknown_preset():
    with pytest.raises(TopologyError):
        preset_topology_spec("torus")
