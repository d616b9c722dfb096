import math

import numpy as np
import pytest
import scipy.linalg

from qbattery.dynamics import Propagator, TimeGrid, diagonalize, evolve, evolve_series
from qbattery.hamiltonians import CouplingConfig, build_battery, build_charger_klocal
from qbattery.spin_hilbert import SIGMA_X, SIGMA_Z, basis_state

from oracles import random_state


@pytest.fixture(scope="module")
def fig1_total():
    cfg = CouplingConfig(8, h_z=1.0, h_x=1.0, J=(1, 0, 0), kappa=2)
    return build_battery(8, 1.0) + build_charger_klocal(cfg)


def test_grid_count():
    assert TimeGrid(10, 0.005).count == 2001
    assert TimeGrid(0.1, 0.1).count == 2
    with pytest.raises(ValueError):
        TimeGrid(1, 0)
    with pytest.raises(ValueError):
        TimeGrid(0.001, 0.01)


def test_diagonalize_diagonal():
    p = diagonalize(SIGMA_Z)
    np.testing.assert_allclose(p.eigenvalues, [-1, 1])
    np.testing.assert_allclose(np.abs(p.eigenvectors), np.eye(2))


def test_diagonalize_sigma_x():
    p = diagonalize(SIGMA_X)
    np.testing.assert_allclose(p.eigenvalues, [-1, 1])
    v = p.eigenvectors
    np.testing.assert_allclose(np.abs(v), np.full((2, 2), 2**-0.5))
    assert abs(v[0, 1] / v[1, 1] - 1) < 1e-12 and abs(v[0, 0] / v[1, 0] + 1) < 1e-12


def test_fig1_reconstruction(fig1_total):
    p = diagonalize(fig1_total)
    assert isinstance(p, Propagator)
    assert np.max(np.abs(p.reconstruct() - fig1_total)) < 1e-8
    V = p.eigenvectors
    assert np.max(np.abs(V.conj().T @ V - np.eye(256))) < 1e-8


def test_evolve_t0_identity(fig1_total):
    psi = random_state(np.random.default_rng(0), 8)
    assert np.max(np.abs(evolve(diagonalize(fig1_total), psi, 0.0) - psi)) < 1e-12


def test_evolve_eigenstate_phase_only():
    psi0 = basis_state(1, [False])
    p = diagonalize(SIGMA_Z)
    for t in (0.3, 2.0, 17.0):
        psi = evolve(p, psi0, t)
        np.testing.assert_allclose(np.abs(psi), [1, 0], atol=1e-14)


def test_rabi_population():
    p = diagonalize(SIGMA_Z + SIGMA_X)
    psi0 = basis_state(1, [False])
    for t in np.linspace(0, 5, 23):
        up = abs(evolve(p, psi0, t)[1]) ** 2
        assert up == pytest.approx(0.5 * math.sin(math.sqrt(2) * t) ** 2, abs=1e-12)


def test_evolve_matches_matrix_exponential(fig1_total):
    psi0 = random_state(np.random.default_rng(1), 8)
    p = diagonalize(fig1_total)
    for t in (0.37, 4.2):
        ref = scipy.linalg.expm(-1j * fig1_total * t) @ psi0
        assert np.max(np.abs(evolve(p, psi0, t) - ref)) < 1e-9


def test_evolve_rejects_bad_input(fig1_total):
    p = diagonalize(fig1_total)
    with pytest.raises(ValueError):
        evolve(p, basis_state(3, [False] * 3), 1.0)
    with pytest.raises(ValueError):
        evolve(p, basis_state(8, [False] * 8), -1.0)


def test_series_two_points():
    p = diagonalize(SIGMA_Z + SIGMA_X)
    psi0 = basis_state(1, [False])
    states = evolve_series(p, psi0, TimeGrid(0.5, 0.5))
    assert states.shape == (2, 2)
    np.testing.assert_allclose(states[0], psi0, atol=1e-14)
    np.testing.assert_allclose(states[1], evolve(p, psi0, 0.5), atol=1e-14)


def test_group_property(fig1_total):
    p = diagonalize(fig1_total)
    psi0 = basis_state(8, [False] * 8)
    two_step = evolve(p, evolve(p, psi0, 1.3), 2.1)
    assert np.max(np.abs(two_step - evolve(p, psi0, 3.4))) < 1e-9


def test_fig1_series_norms_and_energy(fig1_total):
    p = diagonalize(fig1_total)
    psi0 = basis_state(8, [False] * 8)
    states = evolve_series(p, psi0, TimeGrid(10, 0.005))
    assert states.shape == (2001, 256)
    norms = np.linalg.norm(states, axis=1)
    assert np.max(np.abs(norms - 1)) < 1e-10
    energy = np.real(np.einsum("ti,ij,tj->t", states.conj(), fig1_total, states))
    assert np.max(np.abs(energy - energy[0])) < 1e-9


def test_time_reversal(fig1_total):
    psi = random_state(np.random.default_rng(2), 8)
    forward, backward = diagonalize(fig1_total), diagonalize(-fig1_total)
    assert np.max(np.abs(evolve(backward, evolve(forward, psi, 2.7), 2.7) - psi)) < 1e-9
