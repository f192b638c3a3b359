#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from wpcn_lib.engine.stability import detect_stability


@pytest.mark.unit
def test_constant_series_is_stable():
    result = detect_stability(np.full(1000, 42.0))

    assert result.stable
    assert result.slope == 0.0
    assert result.level == 42.0


@pytest.mark.unit
def test_rising_series_is_unstable():
    result = detect_stability(np.linspace(0.0, 1e4, 2000))

    assert not result.stable
    assert result.slope == pytest.approx(1e4 / 1999, rel=1e-6)
    assert result.rise > 0


@pytest.mark.unit
def test_noisy_plateau_is_stable(rng):
    series = 1e5 + rng.normal(0.0, 1e3, 5000)

    result = detect_stability(series)

    assert result.stable
    assert result.level == pytest.approx(1e5, rel=0.01)


@pytest.mark.unit
def test_slow_drift_on_high_level_is_stable():
    # the fitted rise stays under 5% of the level
    series = 1e6 + np.linspace(0.0, 1e4, 4000)

    assert detect_stability(series).stable


@pytest.mark.unit
def test_short_series():
    assert detect_stability(np.array([1.0, 5.0])).stable
    assert detect_stability(np.zeros(0)).level == 0.0
    assert detect_stability(np.arange(10.0)).as_dictionary()["stable"] is False
