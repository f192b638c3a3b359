#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Network topology: nodes, directed data links, streams and E-AP distances.
    Node, link and stream ids are 1-based as in configs and reports; array
    indices used by the numerical code are 0-based positions in id order.
"""
import copy
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.exceptions import TopologyError

logger = logging.getLogger(__name__)

DIAGONAL = math.sqrt(2.0)

# (link id, head, tail, length in hops)
_FIG2A_LINKS = [
    (1, 1, 3, 1.0),
    (2, 1, 4, DIAGONAL),
    (3, 2, 3, 1.0),
    (4, 3, 4, 1.0),
    (5, 4, 5, 1.0),
    (6, 5, 6, 1.0),
    (7, 4, 6, DIAGONAL),
    (8, 5, 9, 1.0),
    (9, 2, 7, 1.0),
    (10, 7, 8, 1.0),
    (11, 8, 9, 1.0),
    (12, 3, 7, DIAGONAL),
]
_FIG2A_STREAMS = [(1, 1, 6), (2, 2, 9)]
_FIG2A_EAP_DISTANCES_M = [34.0, 32.0, 30.0, 28.0, 29.0, 31.0, 30.0, 29.0, 31.0]

_LINE3_LINKS = [(1, 1, 2, 1.0), (2, 2, 3, 1.0)]
_LINE3_STREAMS = [(1, 1, 3)]
_LINE3_EAP_DISTANCES_M = [30.0, 28.0, 30.0]

_RING5_LINKS = [(i + 1, i % 5 + 1, (i + 1) % 5 + 1, 1.0) for i in range(5)] + [
    (i + 6, (i + 1) % 5 + 1, i % 5 + 1, 1.0) for i in range(5)
]
_RING5_STREAMS = [(1, 1, 3)]
_RING5_EAP_DISTANCES_M = [30.0, 29.0, 28.0, 29.0, 30.0]

TOPOLOGY_PRESETS = {
    "fig2a": (9, _FIG2A_LINKS, _FIG2A_STREAMS, _FIG2A_EAP_DISTANCES_M),
    "line3": (3, _LINE3_LINKS, _LINE3_STREAMS, _LINE3_EAP_DISTANCES_M),
    "ring5": (5, _RING5_LINKS, _RING5_STREAMS, _RING5_EAP_DISTANCES_M),
}


@enforce_types
@dataclass(frozen=True)
class Link:
    id: int
    head: int
    tail: int
    length: float


@enforce_types
@dataclass(frozen=True)
class Stream:
    id: int
    source: int
    sink: int


class Topology:
    """Validated network structure plus the index tables the controller needs."""

    def __init__(
        self,
        node_count: int,
        links: List[Link],
        streams: List[Stream],
        eap_antennas: int,
        eap_node_distances: List[float],
    ) -> None:
        self.node_count = node_count
        self.links = sorted(links, key=lambda link: link.id)
        self.streams = sorted(streams, key=lambda stream: stream.id)
        self.eap_antennas = eap_antennas
        self.eap_node_distances = list(eap_node_distances)

        self.head = np.array([link.head - 1 for link in self.links], dtype=int)
        self.tail = np.array([link.tail - 1 for link in self.links], dtype=int)
        self.link_lengths = np.array([link.length for link in self.links], dtype=float)
        self.link_ids = [link.id for link in self.links]
        self.stream_ids = [stream.id for stream in self.streams]

        self.incoming = [
            [i for i, link in enumerate(self.links) if link.tail == n + 1]
            for n in range(node_count)
        ]
        self.outgoing = [
            [i for i, link in enumerate(self.links) if link.head == n + 1]
            for n in range(node_count)
        ]

        self.source_mask = np.zeros((node_count, len(self.streams)), dtype=bool)
        self.sink_mask = np.zeros((node_count, len(self.streams)), dtype=bool)
        for s, stream in enumerate(self.streams):
            self.source_mask[stream.source - 1, s] = True
            self.sink_mask[stream.sink - 1, s] = True

        self.conflicts = self._conflict_matrix()

    @property
    def N(self) -> int:
        return self.node_count

    @property
    def L(self) -> int:
        return len(self.links)

    @property
    def S(self) -> int:
        return len(self.streams)

    @property
    def M(self) -> int:
        return self.eap_antennas

    def _conflict_matrix(self) -> np.ndarray:
        """conflicts[a, b] is True when links a and b share a node (a != b)."""
        ends = np.stack([self.head, self.tail], axis=1) if self.L else np.zeros((0, 2))
        conflicts = np.zeros((self.L, self.L), dtype=bool)
        for a in range(self.L):
            for b in range(self.L):
                if a != b and set(ends[a]) & set(ends[b]):
                    conflicts[a, b] = True
        return conflicts

    @enforce_types
    def link_conflicts(self) -> List[Tuple[int, int]]:
        """Pairs of link ids that cannot be active together."""
        return [
            (self.link_ids[a], self.link_ids[b])
            for a in range(self.L)
            for b in range(a + 1, self.L)
            if self.conflicts[a, b]
        ]

    @enforce_types
    def as_dictionary(self) -> Dict[str, Any]:
        return {
            "node_count": self.node_count,
            "links": [[k.id, k.head, k.tail, k.length] for k in self.links],
            "streams": [[s.id, s.source, s.sink] for s in self.streams],
            "eap_antennas": self.eap_antennas,
            "eap_distances_m": list(self.eap_node_distances),
        }


def _as_int(value, what: str, errors: List[str]) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        errors.append(f"{what} must be an integer")
        return -1
    if int(value) != value:
        errors.append(f"{what} must be an integer")
    return int(value)


@enforce_types
def build_topology(spec: Dict[str, Any]) -> Topology:
    """Validate a structured topology description and index it.

    `spec` holds node_count, links ([id, head, tail, length_m] rows),
    streams ([id, source, sink] rows), eap_antennas and eap_distances_m.
    """
    required = ["node_count", "links", "streams", "eap_antennas", "eap_distances_m"]
    missing = [key for key in required if spec.get(key) is None]
    if missing:
        raise TopologyError("Topology is missing the keys " + ", ".join(missing))

    errors = []
    node_count = _as_int(spec["node_count"], "node_count", errors)
    if node_count < 1:
        errors.append("node_count must be at least 1")

    links = []
    for row in spec["links"]:
        if len(row) != 4:
            errors.append(f"link row {row} must be [id, head, tail, length]")
            continue
        link_id = _as_int(row[0], "link id", errors)
        head = _as_int(row[1], f"head of link {row[0]}", errors)
        tail = _as_int(row[2], f"tail of link {row[0]}", errors)
        length = float(row[3])
        for node in (head, tail):
            if not 1 <= node <= node_count:
                errors.append(f"link {link_id} references unknown node {node}")
        if head == tail:
            errors.append(f"link {link_id} is a self-loop on node {head}")
        if not length > 0 or not math.isfinite(length):
            errors.append(f"link {link_id} length must be positive")
        links.append(Link(link_id, head, tail, length))

    link_ids = [link.id for link in links]
    if len(set(link_ids)) != len(link_ids):
        errors.append("duplicate link ids")

    streams = []
    for row in spec["streams"]:
        if len(row) != 3:
            errors.append(f"stream row {row} must be [id, source, sink]")
            continue
        stream_id = _as_int(row[0], "stream id", errors)
        source = _as_int(row[1], f"source of stream {row[0]}", errors)
        sink = _as_int(row[2], f"sink of stream {row[0]}", errors)
        for node in (source, sink):
            if not 1 <= node <= node_count:
                errors.append(f"stream {stream_id} references unknown node {node}")
        if source == sink:
            errors.append(f"stream {stream_id} has source equal to sink")
        streams.append(Stream(stream_id, source, sink))

    stream_ids = [stream.id for stream in streams]
    if len(set(stream_ids)) != len(stream_ids):
        errors.append("duplicate stream ids")

    eap_antennas = _as_int(spec["eap_antennas"], "eap_antennas", errors)
    if eap_antennas < 1:
        errors.append("eap_antennas must be at least 1")

    distances = [float(d) for d in spec["eap_distances_m"]]
    if len(distances) != node_count:
        errors.append(f"eap_distances_m needs {node_count} entries, got {len(distances)}")
    if any(not d > 0 or not math.isfinite(d) for d in distances):
        errors.append("E-AP distances must be positive")

    if errors:
        raise TopologyError("; ".join(errors))

    topo = Topology(node_count, links, streams, eap_antennas, distances)
    logger.debug(f"Topology built: N={topo.N}, L={topo.L}, S={topo.S}, M={topo.M}")
    return topo


@enforce_types
def preset_topology_spec(
    name: str,
    hop_length: float = 4.0,
    distance_scale: float = 1.0,
    eap_antennas: int = 20,
) -> Dict[str, Any]:
    """Return the structured description of a named topology.

    Link lengths are given in hops and multiplied by `hop_length`; every
    distance, E-AP distances included, is multiplied by `distance_scale`.
    """
    if name not in TOPOLOGY_PRESETS:
        raise TopologyError(f"Unknown topology preset {name}")
    node_count, links, streams, eap_distances = TOPOLOGY_PRESETS[name]

    return {
        "node_count": node_count,
        "links": [
            [link_id, head, tail, hops * hop_length * distance_scale]
            for link_id, head, tail, hops in links
        ],
        "streams": [list(stream) for stream in copy.deepcopy(streams)],
        "eap_antennas": eap_antennas,
        "eap_distances_m": [d * distance_scale for d in eap_distances],
    }


@enforce_types
def topology_from_config(topology_section: Dict[str, Any]) -> Topology:
    """Build the topology named or described by a config's `topology` section.

    Explicit node_count/links/streams/eap_distances_m entries override the
    preset's; with no preset they must all be given.
    """
    section = topology_section
    scale = float(section.get("distance_scale", 1.0))
    if scale <= 0:
        raise TopologyError("distance_scale must be positive")

    if section.get("preset"):
        spec = preset_topology_spec(
            section["preset"],
            float(section.get("hop_length_m", 4.0)),
            scale,
            int(section.get("eap_antennas", 20)),
        )
    else:
        spec = {"eap_antennas": section.get("eap_antennas")}

    for key in ("node_count", "links", "streams", "eap_distances_m"):
        if section.get(key) is not None:
            spec[key] = copy.deepcopy(section[key])
            if key == "links" and not section.get("preset"):
                spec[key] = [row[:3] + [row[3] * scale] for row in spec[key]]
            if key == "eap_distances_m" and not section.get("preset"):
                spec[key] = [d * scale for d in spec[key]]

    return build_topology(spec)
