#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
