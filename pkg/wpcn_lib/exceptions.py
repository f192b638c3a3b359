#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
from typing import Optional


class ConfigError(Exception):
    """Configuration failed schema validation."""


class TopologyError(Exception):
    """Topology description is inconsistent."""


class ConstantsError(Exception):
    """Policy constants could not be derived."""


class ChannelError(Exception):
    """Invalid channel model parameters."""


class RateError(Exception):
    """Invalid rate model parameters."""


class SchedulingError(Exception):
    """Data-link scheduling could not be performed."""


class InvariantViolation(Exception):
    """A controller invariant failed at runtime."""


class ImbalanceFloorViolated(InvariantViolation):
    """An imbalance indicator dropped below the per-slot flow bound."""


class BatteryConstraintViolated(InvariantViolation):
    """A node was scheduled to spend more energy than its battery holds."""


class SimulationFault(Exception):
    """A run aborted on an invariant violation."""

    def __init__(self, message: str, slot: int, snapshot: Optional[dict] = None):
        super().__init__(message)
        self.slot = slot
        self.snapshot = snapshot or {}


class OracleError(Exception):
    """Oracle input is out of its supported range."""


class UnstableTraceError(Exception):
    """Attraction statistics requested on a trace flagged unstable."""


class TraceFormatError(Exception):
    """Trace file is malformed or truncated."""
