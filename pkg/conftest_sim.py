#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest

from tests.resources.helper_functions import setup_run, small_config


@pytest.fixture
def config_dict():
    return small_config()


@pytest.fixture
def line3(config_dict):
    """(cfg, topo, rate_model, constants) for the 3-node line."""
    return setup_run(config_dict)


@pytest.fixture
def fig2a():
    return setup_run(small_config("fig2a"))


@pytest.fixture
def rng():
    return np.random.default_rng(2026)
