#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Re-solve a controller decision with the independent solvers."""
from typing import List

from wpcn_lib.channel.estimation import EstimatedChannelState
from wpcn_lib.controller.beamforming import beamform, energy_matrix
from wpcn_lib.controller.eecw import ControlAction, EECWController
from wpcn_lib.controller.routing import routing_weights, select_streams
from wpcn_lib.controller.scheduling import EXACT, schedule_data
from wpcn_lib.oracle.brute_force import MAX_LEVELS, MAX_LINKS, brute_force_schedule
from wpcn_lib.oracle.jacobi import MAX_SIZE, exact_eigen
from wpcn_lib.oracle.lemma_checks import EIGEN_GAP, MATCHING_GAP, ViolationReport
from wpcn_lib.state.network_state import NetworkState

EIGEN_RTOL = 1e-9


def audit_slot(
    controller: EECWController,
    st: NetworkState,
    csi: EstimatedChannelState,
    action: ControlAction,
) -> List[ViolationReport]:
    """Compare one slot's schedule and beam against brute force and Jacobi.

    Instances above the oracle size guards are skipped. The exact backend
    must match the brute-force optimum; any backend must not beat it.
    """
    topo, C = controller.topo, controller.constants.C
    Z = action.Z
    reports = []

    if topo.L <= MAX_LINKS and len(controller.levels) <= MAX_LEVELS:
        _, W_l = select_streams(routing_weights(st.U_virtual, Z, topo))
        schedule = schedule_data(
            Z, W_l, csi.g2, controller.rate_model, controller.levels, C, topo, controller.backend
        )
        optimum = brute_force_schedule(
            Z, W_l, csi.g2, controller.levels, C, topo, controller.rate_model
        )
        if schedule.F_d < optimum or (schedule.backend == EXACT and schedule.F_d != optimum):
            reports.append(
                ViolationReport(
                    MATCHING_GAP, st.slot, 0, schedule.F_d, optimum, f"backend {schedule.backend}"
                )
            )

    M = csi.h.shape[1]
    beam = beamform(Z, csi.h, C)
    # iterations == 0 marks a numerically zero energy matrix
    if M <= MAX_SIZE and beam.iterations > 0:
        largest, _ = exact_eigen(energy_matrix(Z, csi.h, C))
        if abs(beam.eigenvalue - largest) > EIGEN_RTOL * abs(largest):
            reports.append(
                ViolationReport(
                    EIGEN_GAP,
                    st.slot,
                    0,
                    beam.eigenvalue,
                    largest,
                    f"{beam.iterations} power iterations",
                )
            )
    return reports
