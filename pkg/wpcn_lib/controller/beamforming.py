#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Energy beamforming at the E-AP.

    The beam maximizes sum_n C Z_n |w . h_n|^2 over unit vectors w, i.e. w is
    the conjugate of the principal eigenvector of H = C sum_n Z_n h_n^T h_n^*.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from enforce_typing import enforce_types
from scipy.linalg import eigh

logger = logging.getLogger(__name__)

POWER_ITERATION_TOL = 1e-12
POWER_ITERATION_MAX = 1000
EIGEN_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class Beam:
    w: np.ndarray  # (M,) unit-norm beamforming vector
    gains: np.ndarray  # (N,) |w . h_n|^2 under the CSI used
    eigenvalue: float  # w H w^H
    iterations: int
    converged: bool


@enforce_types
def energy_matrix(Z: np.ndarray, h: np.ndarray, C: float) -> np.ndarray:
    """H[i, j] = C sum_n Z_n h_n[i] conj(h_n[j])."""
    weighted = h * Z[:, None]
    return C * (weighted.T @ h.conj())


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate v so its first nonzero entry is real and positive."""
    magnitude = np.abs(v)
    nonzero = np.nonzero(magnitude > 1e-12 * magnitude.max())[0] if magnitude.max() > 0 else []
    if not len(nonzero):
        return v
    first = v[nonzero[0]]
    return v * (abs(first) / first)


def power_iteration(
    H: np.ndarray, tol: float = POWER_ITERATION_TOL, max_iter: int = POWER_ITERATION_MAX
) -> Tuple[np.ndarray, int, bool]:
    """Principal eigenvector of a Hermitian PSD matrix from an all-ones start."""
    scale = float(np.real(np.trace(H)))
    A = H / scale
    x = np.ones(H.shape[0], dtype=complex) / np.sqrt(H.shape[0])
    for iteration in range(1, max_iter + 1):
        y = A @ x
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return x, iteration, False
        y = fix_phase(y / norm)
        if np.linalg.norm(y - x) <= tol:
            return y, iteration, True
        x = y
    return x, max_iter, False


@enforce_types
def beamform(Z: np.ndarray, h: np.ndarray, C: float) -> Beam:
    """Beam for the current imbalance weights and (estimated) energy channels.

    Falls back to a dense eigensolver when power iteration does not converge;
    a numerically zero H yields the first basis vector and zero gains.
    """
    M = h.shape[1]
    H = energy_matrix(Z, h, C)
    if not float(np.real(np.trace(H))) > np.finfo(float).tiny:
        w = np.zeros(M, dtype=complex)
        w[0] = 1.0
        return Beam(w=w, gains=np.zeros(h.shape[0]), eigenvalue=0.0, iterations=0, converged=True)

    v, iterations, converged = power_iteration(H)
    v = v / np.linalg.norm(v)
    if converged:
        # a start that is itself a minor eigenvector converges to the wrong one
        largest = float(eigh(H, eigvals_only=True)[-1])
        quotient = float(np.real(v.conj() @ H @ v))
        if quotient < (1 - EIGEN_RTOL) * largest:
            logger.warning(
                f"Power iteration stopped at eigenvalue {quotient:.6g} < {largest:.6g}; using eigh"
            )
            converged = False
    else:
        logger.warning(
            f"Power iteration did not converge in {iterations} iterations; using eigh"
        )
    if not converged:
        _, vectors = eigh(H)
        v = fix_phase(vectors[:, -1])
        v = v / np.linalg.norm(v)

    w = v.conj()
    gains = np.abs(h @ w) ** 2
    eigenvalue = float(np.real(w @ H @ w.conj()))
    return Beam(w=w, gains=gains, eigenvalue=eigenvalue, iterations=iterations, converged=converged)
