#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Channel-trace dump and replay.

    One CSV row per coefficient: slot, kind, entity (1-based link or node
    id), antenna (1-based, 0 for data links), re, im. Kinds g/h hold the
    clipped coefficients, *_los and *_scatter the components estimation needs,
    so a replayed run reproduces the original one exactly.
"""
import csv
import logging
from pathlib import Path
from typing import Dict, Iterable, List

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.channel.rician import ChannelState
from wpcn_lib.exceptions import TraceFormatError
from wpcn_lib.network.topology import Topology

logger = logging.getLogger(__name__)

COLUMNS = ["slot", "kind", "entity", "antenna", "re", "im"]
LINK_KINDS = ("g", "g_los", "g_scatter")
NODE_KINDS = ("h", "h_los", "h_scatter")


def _rows(state: ChannelState):
    for kind, values in zip(LINK_KINDS, (state.g, state.g_los, state.g_scatter)):
        for l, value in enumerate(values):
            yield [state.slot, kind, l + 1, 0, repr(float(value.real)), repr(float(value.imag))]
    for kind, values in zip(NODE_KINDS, (state.h, state.h_los, state.h_scatter)):
        for n in range(values.shape[0]):
            for m in range(values.shape[1]):
                value = values[n, m]
                yield [state.slot, kind, n + 1, m + 1, repr(float(value.real)), repr(float(value.imag))]


@enforce_types
def write_channel_trace(path: str, states: Iterable) -> int:
    """Write channel states to CSV; return the number of slots written."""
    count = 0
    with open(path, "w", newline="") as file:
        writer = csv.writer(file)
        writer.writerow(COLUMNS)
        for state in states:
            writer.writerows(_rows(state))
            count += 1
    logger.info(f"Wrote {count} channel slots to {path}")
    return count


@enforce_types
def read_channel_trace(path: str, topo: Topology) -> List[ChannelState]:
    """Parse a channel-trace CSV written for `topo`, ordered by slot."""
    if not Path(path).exists():
        raise TraceFormatError(f"Channel trace not found: {path}")

    slots: Dict[int, Dict[str, np.ndarray]] = {}
    with open(path, newline="") as file:
        reader = csv.reader(file)
        header = next(reader, None)
        if header != COLUMNS:
            raise TraceFormatError(f"Unexpected channel trace header {header}")
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(COLUMNS):
                raise TraceFormatError(f"Line {line_no}: expected {len(COLUMNS)} fields")
            try:
                slot, entity, antenna = int(row[0]), int(row[2]), int(row[3])
                value = complex(float(row[4]), float(row[5]))
            except ValueError as e:
                raise TraceFormatError(f"Line {line_no}: {e}")
            kind = row[1]
            if entity < 1 or (kind in NODE_KINDS and antenna < 1):
                raise TraceFormatError(f"Line {line_no}: index outside topology")
            arrays = slots.setdefault(
                slot,
                {
                    **{k: np.full(topo.L, np.nan, dtype=complex) for k in LINK_KINDS},
                    **{k: np.full((topo.N, topo.M), np.nan, dtype=complex) for k in NODE_KINDS},
                },
            )
            try:
                if kind in LINK_KINDS:
                    arrays[kind][entity - 1] = value
                elif kind in NODE_KINDS:
                    arrays[kind][entity - 1, antenna - 1] = value
                else:
                    raise TraceFormatError(f"Line {line_no}: unknown kind {kind}")
            except IndexError:
                raise TraceFormatError(f"Line {line_no}: index outside topology")

    states = []
    for slot in sorted(slots):
        arrays = slots[slot]
        if any(np.isnan(a).any() for a in arrays.values()):
            raise TraceFormatError(f"Slot {slot} is incomplete")
        states.append(
            ChannelState(
                g=arrays["g"],
                h=arrays["h"],
                slot=slot,
                g_los=arrays["g_los"],
                h_los=arrays["h_los"],
                g_scatter=arrays["g_scatter"],
                h_scatter=arrays["h_scatter"],
            )
        )
    return states


class ReplaySampler:
    """Serves recorded channel states in slot order, same interface as ChannelSampler."""

    def __init__(self, states: List[ChannelState]) -> None:
        self.states = states

    def sample(self, slot: int) -> ChannelState:
        if slot >= len(self.states):
            raise TraceFormatError(f"Channel trace holds {len(self.states)} slots, slot {slot} requested")
        return self.states[slot]
