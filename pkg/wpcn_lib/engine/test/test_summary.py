#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from tests.resources.helper_functions import path_topology
from wpcn_lib.engine.records import Trace
from wpcn_lib.engine.summary import RunSummary, build_id, summarize

TAU = 1e-3


def _trace(slots=10):
    topo = path_topology(2)
    trace = Trace(topo.N, topo.link_ids, topo.stream_ids, capacity=slots)
    for t in range(slots):
        energy = t % 2 == 0
        trace.append(
            slot=t,
            energy_mode=energy,
            e_ap=4.0 * TAU if energy else 0.0,
            data_backlog=100.0,
            U=np.full((topo.N, topo.S), 50.0),
            B=np.full(topo.N, 1e-6),
            realized=[0.0, 2e5] if not energy else [0.0, 0.0],
            arrivals=[1000.0 if t % 5 == 0 else 0.0],
            delivered=[200.0 if not energy else 0.0],
            delivered_dummy=[50.0 if not energy else 0.0],
        )
    return trace


@pytest.mark.unit
def test_summarize_after_warmup():
    summary = summarize(_trace(), 2, TAU)

    assert summary.horizon == 10
    assert summary.warmup_slots == 2
    assert summary.avg_energy_per_slot == pytest.approx(2.0 * TAU)
    assert summary.energy_slot_fraction == 0.5
    assert summary.avg_sum_backlog == 150.0
    assert summary.avg_data_backlog == 100.0
    assert summary.link_throughput == pytest.approx([0.0, 1e5])
    # 4 data slots deliver 150 real bits each over 8 slots
    assert summary.stream_goodput == pytest.approx([600.0 / (8 * TAU)])
    assert summary.total_arrivals == 1000.0
    assert summary.avg_drop_fraction == 0.0
    assert summary.stable
    assert summary.attraction["queue"]["frequency"][0] == 0.0


@pytest.mark.unit
def test_summarize_empty_trace():
    topo = path_topology(2)
    trace = Trace(topo.N, topo.link_ids, topo.stream_ids)

    summary = summarize(trace, 5, TAU, initial_backlog=30.0)

    assert summary.horizon == 0
    assert summary.avg_energy_per_slot == 0.0
    assert summary.avg_sum_backlog == 30.0
    assert summary.link_throughput == [0.0, 0.0]
    assert summary.attraction is None


@pytest.mark.unit
def test_summary_json(tmp_path):
    summary = summarize(_trace(), 2, TAU)
    summary.build_id = build_id()
    path = str(tmp_path / "summary.json")

    summary.to_json(path)
    loaded = RunSummary.from_json(path)

    assert loaded.as_dictionary() == summary.as_dictionary()
    assert loaded.schema_version == "1"
    assert "stable" in loaded.one_line()
    assert loaded.build_id
