#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import numpy as np
import pytest
from scipy.linalg import eigh

from wpcn_lib.controller.beamforming import beamform, energy_matrix, fix_phase, power_iteration
from wpcn_lib.controller.energy import energy_weight


def _channels(rng, N=5, M=4):
    return (rng.standard_normal((N, M)) + 1j * rng.standard_normal((N, M))) * 1e-3


@pytest.mark.unit
def test_energy_matrix_is_hermitian_psd(rng):
    h = _channels(rng)
    Z = rng.uniform(1.0, 10.0, 5)

    H = energy_matrix(Z, h, 2.0)

    assert np.allclose(H, H.conj().T)
    assert np.all(np.linalg.eigvalsh(H) > -1e-12 * np.abs(H).max())
    expected = 2.0 * sum(Z[n] * np.outer(h[n], h[n].conj()) for n in range(5))
    assert np.allclose(H, expected)


@pytest.mark.unit
def test_fix_phase():
    v = np.array([0.0, 1j, 1.0])

    fixed = fix_phase(v)

    assert fixed[1] == pytest.approx(1.0)
    assert fixed[2] == pytest.approx(-1j)
    assert fix_phase(np.zeros(3, dtype=complex)).tolist() == [0, 0, 0]


@pytest.mark.unit
def test_power_iteration_diagonal():
    v, iterations, converged = power_iteration(np.diag([3.0, 1.0]).astype(complex))

    assert converged
    assert iterations > 1
    assert np.allclose(v, [1.0, 0.0], atol=1e-10)


@pytest.mark.unit
def test_beam_matches_dense_eigensolver(rng):
    for _ in range(10):
        h = _channels(rng)
        Z = rng.uniform(1.0, 10.0, 5)
        C = 1e3

        beam = beamform(Z, h, C)
        values, _ = eigh(energy_matrix(Z, h, C))

        assert np.linalg.norm(beam.w) == pytest.approx(1.0)
        assert beam.eigenvalue == pytest.approx(values[-1], rel=1e-9)
        assert energy_weight(beam.gains, Z, C) == pytest.approx(beam.eigenvalue, rel=1e-9)


@pytest.mark.unit
def test_single_node_beam_points_at_it(rng):
    h = _channels(rng)
    Z = np.array([0.0, 0.0, 4.0, 0.0, 0.0])

    beam = beamform(Z, h, 1.0)

    assert beam.converged
    assert beam.gains[2] == pytest.approx(np.sum(np.abs(h[2]) ** 2), rel=1e-9)


@pytest.mark.unit
def test_zero_weights_give_no_beam(rng):
    h = _channels(rng)

    beam = beamform(np.zeros(5), h, 1.0)

    assert beam.iterations == 0
    assert beam.eigenvalue == 0.0
    assert not beam.gains.any()
    assert beam.w.tolist() == [1, 0, 0, 0]


@pytest.mark.unit
def test_orthogonal_channels_beam_to_the_heavier_node():
    # the all-ones start is an eigenvector here, but not the principal one
    h = np.array([[1.0, -1.0], [1.0, 1.0]], dtype=complex)
    Z = np.array([2.0, 1.0])

    beam = beamform(Z, h, 1.0)

    assert beam.eigenvalue == pytest.approx(4.0)
    assert beam.gains == pytest.approx([2.0, 0.0], abs=1e-12)
    alignment = abs(np.vdot(h[0].conj() / np.linalg.norm(h[0]), beam.w))
    assert alignment == pytest.approx(1.0)
    assert not beam.converged


@pytest.mark.unit
def test_beam_reaches_the_largest_eigenvalue_on_los_channels(rng):
    # broadside steering vectors are all ones
    M = 4
    h = np.vstack([np.ones(M), _channels(rng, N=3, M=M) * 1e3]).astype(complex)
    Z = np.array([1.0, 5.0, 5.0, 5.0])

    beam = beamform(Z, h, 1.0)

    largest = eigh(energy_matrix(Z, h, 1.0), eigvals_only=True)[-1]
    assert beam.eigenvalue >= (1 - 1e-9) * largest
