#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#

# This is the global conftest. EVERY SINGLE TEST looks at this.
# Simulation fixtures live in conftest_sim.py; subpackages import it.
from wpcn_lib.log_config import setup_logging

setup_logging()
