#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from tests.resources.helper_functions import forged_trace, path_topology, simulate, small_config
from wpcn_lib.engine.records import DATA, ENERGY, Trace
from wpcn_lib.exceptions import TraceFormatError


@pytest.mark.unit
def test_columns():
    trace = Trace(2, [7], [3], capacity=1)

    columns = trace.columns()

    assert columns[:4] == ["slot", "mode", "e_ap", "data_backlog"]
    assert "z_2" in columns
    assert "u_virtual_1_3" in columns
    assert "realized_7" in columns
    assert columns[-1] == "delivered_dummy_3"


@pytest.mark.unit
def test_capacity():
    topo = path_topology(2)
    trace = forged_trace(topo, 3, 1.0, 1.0, 1.0)

    with pytest.raises(IndexError):
        trace.append(slot=3)
    assert len(trace) == 3


@pytest.mark.unit
def test_record_view():
    topo = path_topology(2)
    trace = forged_trace(topo, 2, 5.0, 2.0, 3.0)

    record = trace.record(1)

    assert record.slot == 1
    assert record.mode == ENERGY
    assert record.B.tolist() == [3.0, 3.0, 3.0]
    assert record.E_virtual.tolist() == [2.0, 2.0, 2.0]


@pytest.mark.integration
def test_csv_round_trip(tmp_path):
    trace, _ = simulate(small_config(horizon=60))
    path = str(tmp_path / "trace.csv")

    trace.to_csv(path)
    loaded = Trace.from_csv(path)

    assert loaded.equals(trace)
    assert {DATA, ENERGY} >= {loaded.record(t).mode for t in range(len(loaded))}


@pytest.mark.unit
def test_truncated_file(tmp_path):
    topo = path_topology(2)
    path = tmp_path / "trace.csv"
    forged_trace(topo, 4, 1.0, 1.0, 1.0).to_csv(str(path))
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:-1] + [lines[-1][: len(lines[-1]) // 2]]) + "\n")

    with pytest.raises(TraceFormatError) as err:
        Trace.from_csv(str(path))
    assert "Line 5" in str(err.value)


@pytest.mark.unit
def test_malformed_files(tmp_path):
    with pytest.raises(TraceFormatError):
        Trace.from_csv(str(tmp_path / "missing.csv"))

    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(TraceFormatError):
        Trace.from_csv(str(empty))

    wrong = tmp_path / "wrong.csv"
    wrong.write_text("slot,mode\n0,data\n")
    with pytest.raises(TraceFormatError):
        Trace.from_csv(str(wrong))

    topo = path_topology(2)
    bad_mode = tmp_path / "mode.csv"
    forged_trace(topo, 1, 1.0, 1.0, 1.0).to_csv(str(bad_mode))
    bad_mode.write_text(bad_mode.read_text().replace(",energy,", ",sleep,"))
    with pytest.raises(TraceFormatError) as err:
        Trace.from_csv(str(bad_mode))
    assert "sleep" in str(err.value)

    bad_number = tmp_path / "number.csv"
    forged_trace(topo, 1, 1.0, 1.0, 1.0).to_csv(str(bad_number))
    header, row = bad_number.read_text().splitlines()
    fields = row.split(",")
    fields[5] = "lots"
    bad_number.write_text(header + "\n" + ",".join(fields) + "\n")
    with pytest.raises(TraceFormatError):
        Trace.from_csv(str(bad_number))


@pytest.mark.unit
def test_equals_detects_differences():
    topo = path_topology(2)
    a = forged_trace(topo, 3, 1.0, 1.0, 1.0)
    b = forged_trace(topo, 3, 1.0, 1.0, 1.0)
    assert a.equals(b)

    b.B[2, 0] = np.nextafter(1.0, 2.0)
    assert not a.equals(b)
