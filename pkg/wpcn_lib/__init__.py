#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#

"""Simulator and online controller for wirelessly-powered multi-hop networks."""

__author__ = """WPCN-lib contributors"""
__version__ = "0.3.1"
