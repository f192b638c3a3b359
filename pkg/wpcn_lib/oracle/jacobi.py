#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""Dense Hermitian eigensolver by cyclic Jacobi rotations."""
import math
from typing import Tuple

import numpy as np
from enforce_typing import enforce_types

from wpcn_lib.controller.beamforming import fix_phase
from wpcn_lib.exceptions import OracleError

MAX_SIZE = 8
MAX_SWEEPS = 100
HERMITIAN_TOL = 1e-12


def _off_norm(A: np.ndarray) -> float:
    off = np.abs(A - np.diag(np.diag(A))) ** 2
    return float(np.sqrt(np.sum(off)))


@enforce_types
def jacobi_eigen(H: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """All eigenvalues (ascending) and unit eigenvectors (columns) of H."""
    A = np.array(H, dtype=complex)
    M = A.shape[0]
    V = np.eye(M, dtype=complex)
    scale = max(float(np.linalg.norm(A)), np.finfo(float).tiny)

    for _ in range(MAX_SWEEPS):
        if _off_norm(A) <= 1e-14 * scale:
            break
        for p in range(M - 1):
            for q in range(p + 1, M):
                c = abs(A[p, q])
                if c <= 1e-18 * scale:
                    continue
                phase = A[p, q] / c
                a, b = A[p, p].real, A[q, q].real
                theta = 0.5 * math.atan2(2.0 * c, a - b)
                cos, sin = math.cos(theta), math.sin(theta)
                # G = diag(1, conj(phase)) @ real rotation, on rows/cols p and q
                G = np.eye(M, dtype=complex)
                G[p, p] = cos
                G[p, q] = -sin
                G[q, p] = sin * phase.conjugate()
                G[q, q] = cos * phase.conjugate()
                A = G.conj().T @ A @ G
                V = V @ G

    values = np.real(np.diag(A))
    order = np.argsort(values)
    return values[order], V[:, order]


@enforce_types
def exact_eigen(H: np.ndarray) -> Tuple[float, np.ndarray]:
    """Largest eigenvalue of a Hermitian H and its unit eigenvector.

    The vector follows the beamformer's phase convention.
    """
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise OracleError(f"Expected a square matrix, got shape {H.shape}")
    if H.shape[0] > MAX_SIZE:
        raise OracleError(f"Jacobi oracle limited to {MAX_SIZE}x{MAX_SIZE}, got {H.shape}")
    asymmetry = float(np.max(np.abs(H - H.conj().T))) if H.size else 0.0
    if asymmetry > HERMITIAN_TOL * max(1.0, float(np.max(np.abs(H)))):
        raise OracleError(f"Matrix is not Hermitian (max asymmetry {asymmetry:.3g})")

    values, vectors = jacobi_eigen(H)
    v = fix_phase(vectors[:, -1])
    return float(values[-1]), v / np.linalg.norm(v)
