#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Per-slot trace storage and its CSV form.

    Row t holds the state at the start of slot t together with the action
    taken and the flows realized during slot t. Column groups, in order:

        slot, mode, e_ap, data_backlog
        per node n:          z_n, b_virtual_n, b_n, e_recv_n, phi_in_n,
                             phi_out_n, phi_out_real_n
        per node n, stream s: u_virtual_n_s, u_n_s, drop_buf_n_s, drop_energy_n_s
        per link l:          p_l, rate_l, stream_l, realized_l
        per stream s:        arrivals_s, delivered_s, delivered_dummy_s

    Node, link and stream ids in column names are the topology's 1-based ids.
    Floats are written with repr so a read-back trace is bit-identical.
"""
import csv
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.exceptions import TraceFormatError

logger = logging.getLogger(__name__)

ENERGY = "energy"
DATA = "data"

SCALAR_FIELDS = [("e_ap", "e_ap"), ("data_backlog", "data_backlog")]
NODE_FIELDS = [
    ("z", "Z"),
    ("b_virtual", "E_virtual"),
    ("b", "B"),
    ("e_recv", "energy_received"),
    ("phi_in", "phi_in"),
    ("phi_out", "phi_out"),
    ("phi_out_real", "phi_out_real"),
]
QUEUE_FIELDS = [
    ("u_virtual", "U_virtual"),
    ("u", "U"),
    ("drop_buf", "drop_buffer"),
    ("drop_energy", "drop_energy"),
]
LINK_FIELDS = [("p", "p"), ("rate", "rate"), ("stream", "stream"), ("realized", "realized")]
STREAM_FIELDS = [
    ("arrivals", "arrivals"),
    ("delivered", "delivered"),
    ("delivered_dummy", "delivered_dummy"),
]


@dataclass(frozen=True, eq=False)
class SlotRecord:
    slot: int
    mode: str
    e_ap: float
    energy_received: np.ndarray
    phi_in: np.ndarray
    phi_out: np.ndarray
    realized_rates: np.ndarray
    U: np.ndarray
    B: np.ndarray
    U_virtual: np.ndarray
    E_virtual: np.ndarray
    drops_buffer: np.ndarray
    drops_energy: np.ndarray


class Trace:
    """Columnar per-slot record of a run."""

    def __init__(
        self, node_count: int, link_ids: List[int], stream_ids: List[int], capacity: int = 0
    ) -> None:
        self.node_count = node_count
        self.link_ids = list(link_ids)
        self.stream_ids = list(stream_ids)
        self.length = 0

        N, L, S, T = node_count, len(link_ids), len(stream_ids), capacity
        self.slot = np.zeros(T, dtype=int)
        self.energy_mode = np.zeros(T, dtype=bool)
        self.e_ap = np.zeros(T)
        self.data_backlog = np.zeros(T)
        for _, name in NODE_FIELDS:
            setattr(self, name, np.zeros((T, N)))
        for _, name in QUEUE_FIELDS:
            setattr(self, name, np.zeros((T, N, S)))
        for _, name in LINK_FIELDS:
            setattr(self, name, np.zeros((T, L), dtype=int if name == "stream" else float))
        for _, name in STREAM_FIELDS:
            setattr(self, name, np.zeros((T, S)))

    def __len__(self) -> int:
        return self.length

    @property
    def N(self) -> int:
        return self.node_count

    @property
    def L(self) -> int:
        return len(self.link_ids)

    @property
    def S(self) -> int:
        return len(self.stream_ids)

    def append(self, **values) -> None:
        """Store one slot; keys are the array attribute names plus `energy_mode`."""
        t = self.length
        if t >= len(self.slot):
            raise IndexError(f"Trace capacity {len(self.slot)} exceeded")
        for name, value in values.items():
            getattr(self, name)[t] = value
        self.length += 1

    def truncate(self) -> None:
        """Drop unused preallocated rows."""
        for name in self._array_names():
            setattr(self, name, getattr(self, name)[: self.length])

    def _array_names(self) -> List[str]:
        names = ["slot", "energy_mode", "e_ap", "data_backlog"]
        for group in (NODE_FIELDS, QUEUE_FIELDS, LINK_FIELDS, STREAM_FIELDS):
            names += [name for _, name in group]
        return names

    def record(self, t: int) -> SlotRecord:
        return SlotRecord(
            slot=int(self.slot[t]),
            mode=ENERGY if self.energy_mode[t] else DATA,
            e_ap=float(self.e_ap[t]),
            energy_received=self.energy_received[t],
            phi_in=self.phi_in[t],
            phi_out=self.phi_out_real[t],
            realized_rates=self.realized[t],
            U=self.U[t],
            B=self.B[t],
            U_virtual=self.U_virtual[t],
            E_virtual=self.E_virtual[t],
            drops_buffer=self.drop_buffer[t],
            drops_energy=self.drop_energy[t],
        )

    def equals(self, other: "Trace") -> bool:
        if (self.node_count, self.link_ids, self.stream_ids, self.length) != (
            other.node_count,
            other.link_ids,
            other.stream_ids,
            other.length,
        ):
            return False
        return all(
            np.array_equal(getattr(self, name)[: self.length], getattr(other, name)[: other.length])
            for name in self._array_names()
        )

    def columns(self) -> List[str]:
        nodes = range(1, self.node_count + 1)
        header = ["slot", "mode"] + [column for column, _ in SCALAR_FIELDS]
        for column, _ in NODE_FIELDS:
            header += [f"{column}_{n}" for n in nodes]
        for column, _ in QUEUE_FIELDS:
            header += [f"{column}_{n}_{s}" for n in nodes for s in self.stream_ids]
        for column, _ in LINK_FIELDS:
            header += [f"{column}_{l}" for l in self.link_ids]
        for column, _ in STREAM_FIELDS:
            header += [f"{column}_{s}" for s in self.stream_ids]
        return header

    def _row(self, t: int) -> List:
        row = [int(self.slot[t]), ENERGY if self.energy_mode[t] else DATA]
        row += [repr(float(self.e_ap[t])), repr(float(self.data_backlog[t]))]
        for _, name in NODE_FIELDS:
            row += [repr(float(v)) for v in getattr(self, name)[t]]
        for _, name in QUEUE_FIELDS:
            row += [repr(float(v)) for v in getattr(self, name)[t].ravel()]
        for _, name in LINK_FIELDS:
            values = getattr(self, name)[t]
            if name == "stream":
                row += [int(v) for v in values]
            else:
                row += [repr(float(v)) for v in values]
        for _, name in STREAM_FIELDS:
            row += [repr(float(v)) for v in getattr(self, name)[t]]
        return row

    @enforce_types
    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="") as file:
            writer = csv.writer(file)
            writer.writerow(self.columns())
            for t in range(self.length):
                writer.writerow(self._row(t))
        logger.info(f"Wrote {self.length} slots to {path}")

    @classmethod
    def from_csv(cls, path: str) -> "Trace":
        """Parse a trace CSV; raise TraceFormatError on any deviation from the layout."""
        if not Path(path).exists():
            raise TraceFormatError(f"Trace not found: {path}")
        with open(path, newline="") as file:
            rows = list(csv.reader(file))
        if not rows:
            raise TraceFormatError(f"Trace {path} is empty")

        header = rows[0]
        node_count = sum(1 for column in header if re.fullmatch(r"z_\d+", column))
        link_ids = _ids(header, "p")
        stream_ids = _ids(header, "arrivals")
        trace = cls(node_count, link_ids, stream_ids, capacity=len(rows) - 1)
        if node_count == 0 or header != trace.columns():
            raise TraceFormatError(f"Trace {path} has an unexpected header")

        for line_no, row in enumerate(rows[1:], start=2):
            if len(row) != len(header):
                raise TraceFormatError(
                    f"Line {line_no}: expected {len(header)} fields, got {len(row)}"
                )
            try:
                trace.append(**_parse_row(row, trace))
            except ValueError as e:
                raise TraceFormatError(f"Line {line_no}: {e}")
        return trace


def _ids(header: List[str], prefix: str) -> List[int]:
    pattern = re.compile(rf"{prefix}_(\d+)")
    return [int(m.group(1)) for m in map(pattern.fullmatch, header) if m]


def _parse_row(row: List[str], trace: Trace) -> Dict[str, object]:
    N, L, S = trace.N, trace.L, trace.S
    if row[1] not in (ENERGY, DATA):
        raise ValueError(f"unknown mode {row[1]}")
    values: Dict[str, object] = {
        "slot": int(row[0]),
        "energy_mode": row[1] == ENERGY,
        "e_ap": float(row[2]),
        "data_backlog": float(row[3]),
    }
    i = 4
    for _, name in NODE_FIELDS:
        values[name] = [float(v) for v in row[i : i + N]]
        i += N
    for _, name in QUEUE_FIELDS:
        values[name] = np.array([float(v) for v in row[i : i + N * S]]).reshape(N, S)
        i += N * S
    for _, name in LINK_FIELDS:
        cast = int if name == "stream" else float
        values[name] = [cast(v) for v in row[i : i + L]]
        i += L
    for _, name in STREAM_FIELDS:
        values[name] = [float(v) for v in row[i : i + S]]
        i += S
    return values
