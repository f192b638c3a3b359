#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Run-level metrics computed from a trace after warmup."""
import json
import logging
import subprocess
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib import __version__
from wpcn_lib.engine.records import Trace
from wpcn_lib.engine.stability import detect_stability
from wpcn_lib.oracle.attraction import attraction_stats

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"
CURVE_POINTS = 16


@dataclass
class RunSummary:
    horizon: int
    warmup_slots: int
    avg_energy_per_slot: float  # joules per slot spent by the E-AP
    avg_sum_backlog: float  # bits held in real queues, dummy bits included
    avg_data_backlog: float  # bits held in real queues, dummy bits excluded
    avg_drop_fraction: float
    energy_slot_fraction: float
    link_throughput: List[float]  # bits/s carried per link
    stream_goodput: List[float]  # bits/s of real data delivered per stream
    total_arrivals: float
    total_dropped: float
    energy_spill: float  # joules discarded at full batteries over the run
    stable: bool
    stability: Dict[str, Any]
    attraction: Optional[Dict[str, Any]] = None
    constants: Dict[str, Any] = field(default_factory=dict)
    config: Dict[str, Any] = field(default_factory=dict)
    build_id: str = ""
    schema_version: str = SCHEMA_VERSION

    def as_dictionary(self) -> Dict[str, Any]:
        return asdict(self)

    @enforce_types
    def to_json(self, path: str) -> None:
        Path(path).write_text(json.dumps(self.as_dictionary(), indent=2, sort_keys=True))

    @classmethod
    def from_json(cls, path: str) -> "RunSummary":
        return cls(**json.loads(Path(path).read_text()))

    def one_line(self) -> str:
        flag = "stable" if self.stable else "UNSTABLE"
        return (
            f"slots={self.horizon} energy/slot={self.avg_energy_per_slot:.4g} J "
            f"backlog={self.avg_sum_backlog:.4g} bits data={self.avg_data_backlog:.4g} bits "
            f"drops={self.avg_drop_fraction:.3g} {flag}"
        )


def build_id() -> str:
    """`git describe --always --dirty` of the source tree, else the package version."""
    try:
        result = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True,
            text=True,
            timeout=5,
        )
        if result.returncode == 0 and result.stdout.strip():
            return result.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        pass
    return f"wpcn-lib {__version__}"


def _thin(curve: np.ndarray, margins: np.ndarray) -> Dict[str, List[float]]:
    pick = np.unique(np.linspace(0, len(margins) - 1, min(CURVE_POINTS, len(margins))).astype(int))
    return {"margins": margins[pick].tolist(), "frequency": curve[pick].tolist()}


@enforce_types
def summarize(
    trace: Trace, warmup_slots: int, slot_seconds: float, initial_backlog: float = 0.0
) -> RunSummary:
    """Average the post-warmup rows of a trace.

    An empty trace summarizes the initial state: no energy spent and the
    initial (dummy) backlog.
    """
    T = len(trace)
    start = min(warmup_slots, T)
    tail = slice(start, T)
    rows = T - start

    backlog_series = trace.U[tail].sum(axis=(1, 2))
    stability = detect_stability(backlog_series)

    arrivals = float(trace.arrivals[tail].sum())
    dropped = float(trace.drop_buffer[tail].sum() + trace.drop_energy[tail].sum())
    seconds = rows * slot_seconds

    if rows:
        avg_energy = float(trace.e_ap[tail].mean())
        avg_backlog = float(backlog_series.mean())
        avg_data = float(trace.data_backlog[tail].mean())
        energy_fraction = float(trace.energy_mode[tail].mean())
        throughput = trace.realized[tail].mean(axis=0).tolist()
        goodput = (
            (trace.delivered[tail] - trace.delivered_dummy[tail]).sum(axis=0) / seconds
        ).tolist()
    else:
        avg_energy = energy_fraction = 0.0
        avg_backlog = initial_backlog
        avg_data = 0.0
        throughput = [0.0] * trace.L
        goodput = [0.0] * trace.S

    attraction = None
    if rows and stability.stable:
        stats = attraction_stats(trace, start, stable=True)
        attraction = {
            "queue": _thin(stats.joint_queue_curve, stats.queue_margins),
            "battery": _thin(stats.joint_battery_curve, stats.battery_margins),
        }
    elif rows:
        logger.warning(
            f"Backlog still rising after warmup (slope {stability.slope:.4g} bits/slot)"
        )

    return RunSummary(
        horizon=T,
        warmup_slots=start,
        avg_energy_per_slot=avg_energy,
        avg_sum_backlog=avg_backlog,
        avg_data_backlog=avg_data,
        avg_drop_fraction=dropped / arrivals if arrivals > 0 else 0.0,
        energy_slot_fraction=energy_fraction,
        link_throughput=throughput,
        stream_goodput=goodput,
        total_arrivals=arrivals,
        total_dropped=dropped,
        energy_spill=0.0,
        stable=stability.stable,
        stability=stability.as_dictionary(),
        attraction=attraction,
    )
