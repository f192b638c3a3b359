#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Trace-level invariant checks.

    Comparisons are exact on the stored values: the imbalance floor, the
    backlog gate on transmitting queues, the battery gate on spending nodes,
    and the battery constraint on what was actually spent.
"""
import json
from dataclasses import asdict, dataclass
from typing import Any, Dict, List

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.engine.records import Trace
from wpcn_lib.network.constants import DerivedConstants
from wpcn_lib.network.topology import Topology

IMBALANCE_FLOOR = "lemma2_1"
BACKLOG_GATE = "lemma2_2"
BATTERY_GATE = "lemma2_3"
BATTERY = "battery"
MATCHING_GAP = "matching_gap"
EIGEN_GAP = "eigen_gap"

KINDS = (IMBALANCE_FLOOR, BACKLOG_GATE, BATTERY_GATE, BATTERY, MATCHING_GAP, EIGEN_GAP)


@dataclass(frozen=True)
class ViolationReport:
    kind: str
    slot: int
    entity: int  # 1-based node or link id, 0 for slot-wide checks
    observed: float
    required: float
    detail: str = ""

    def as_dictionary(self) -> Dict[str, Any]:
        return asdict(self)


def reports_to_json(reports: List[ViolationReport]) -> str:
    return json.dumps([report.as_dictionary() for report in reports], indent=2)


@enforce_types
def check_lemma2(trace: Trace, topo: Topology, constants: DerivedConstants) -> List[ViolationReport]:
    """Scan every slot for the three controller guarantees:

    Z_n >= mu_max; a link carrying stream s has U~[head, s] >= U0 + mu_max;
    a node spending energy has E~_n >= phi_max.
    """
    reports = []
    T = len(trace)
    mu_max, phi_max = constants.mu_max, constants.phi_max
    gate = constants.U0 + constants.mu_max

    for t, n in zip(*np.nonzero(trace.Z[:T] < mu_max)):
        reports.append(
            ViolationReport(
                IMBALANCE_FLOOR, int(trace.slot[t]), int(n) + 1, float(trace.Z[t, n]), mu_max
            )
        )

    stream_index = {stream_id: s for s, stream_id in enumerate(trace.stream_ids)}
    for t, l in zip(*np.nonzero(trace.rate[:T] > 0)):
        stream_id = int(trace.stream[t, l])
        head = int(topo.head[l])
        if stream_id not in stream_index:
            reports.append(
                ViolationReport(
                    BACKLOG_GATE, int(trace.slot[t]), trace.link_ids[l], 0.0, gate, "no stream"
                )
            )
            continue
        backlog = float(trace.U_virtual[t, head, stream_index[stream_id]])
        if not backlog >= gate:
            reports.append(
                ViolationReport(
                    BACKLOG_GATE,
                    int(trace.slot[t]),
                    trace.link_ids[l],
                    backlog,
                    gate,
                    f"stream {stream_id} at node {head + 1}",
                )
            )

    spending = (trace.phi_out[:T] > 0) & ~(trace.E_virtual[:T] >= phi_max)
    for t, n in zip(*np.nonzero(spending)):
        reports.append(
            ViolationReport(
                BATTERY_GATE, int(trace.slot[t]), int(n) + 1, float(trace.E_virtual[t, n]), phi_max
            )
        )

    return sorted(reports, key=lambda r: (r.slot, KINDS.index(r.kind), r.entity))


@enforce_types
def check_battery(trace: Trace) -> List[ViolationReport]:
    """Energy actually spent never exceeds the real battery at slot start."""
    T = len(trace)
    over = trace.phi_out_real[:T] > trace.B[:T]
    return [
        ViolationReport(
            BATTERY,
            int(trace.slot[t]),
            int(n) + 1,
            float(trace.phi_out_real[t, n]),
            float(trace.B[t, n]),
        )
        for t, n in zip(*np.nonzero(over))
    ]
