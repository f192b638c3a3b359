#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Conversions between config units and the SI units used internally."""
import math
from typing import Optional, Union

from enforce_typing import enforce_types

SPEED_OF_LIGHT = 299792458.0
BITS_PER_KBYTE = 8000.0

Number = Union[int, float]


@enforce_types
def db_to_linear(value_db: Number) -> float:
    return float(10.0 ** (value_db / 10.0))


@enforce_types
def dbm_to_watts(value_dbm: Number) -> float:
    return float(10.0 ** ((value_dbm - 30.0) / 10.0))


@enforce_types
def kbps_to_bps(value: Number) -> float:
    return float(value * 1e3)


@enforce_types
def khz_to_hz(value: Number) -> float:
    return float(value * 1e3)


@enforce_types
def ghz_to_hz(value: Number) -> float:
    return float(value * 1e9)


@enforce_types
def mw_to_watts(value: Number) -> float:
    return float(value * 1e-3)


@enforce_types
def ms_to_seconds(value: Number) -> float:
    return float(value * 1e-3)


@enforce_types
def mj_to_joules(value: Optional[Number]) -> float:
    """None stands for an unlimited battery."""
    return math.inf if value is None else float(value * 1e-3)


@enforce_types
def uj_to_joules(value: Optional[Number]) -> float:
    """None stands for a noiseless (infinite-energy) pilot."""
    return math.inf if value is None else float(value * 1e-6)


@enforce_types
def kbytes_to_bits(value: Optional[Number]) -> float:
    """None stands for an unlimited buffer."""
    return math.inf if value is None else float(value * BITS_PER_KBYTE)


@enforce_types
def str_with_bits(bits: Number) -> str:
    return f"{bits / BITS_PER_KBYTE:.3f} kB ({bits:.0f} bits)"
