import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qbattery.correlations import concurrence
from qbattery.hamiltonians import (
    ChargerSpec,
    CouplingConfig,
    DegenerateGroundStateWarning,
    build_battery,
    build_charger_klocal,
    build_charger_nnn,
    build_total,
    ground_state,
    normalize_to,
    operator_norm,
    transverse_field,
)
from qbattery.spin_hilbert import basis_state, pauli_string

from oracles import pauli_by_action


def x_string_norm(n, terms):
    """Brute-force max |sum_c coeff * prod_{s in sites} x_s| over x in {+-1}^n."""
    best = 0.0
    for signs in itertools.product((1, -1), repeat=n):
        val = sum(c * math.prod(signs[s] for s in sites) for c, sites in terms)
        best = max(best, abs(val))
    return best


def test_battery_single_spin():
    np.testing.assert_array_equal(build_battery(1, 1.0), np.diag([-1, 1]))


def test_battery_ground_energy():
    assert np.linalg.eigvalsh(build_battery(8, 1.0))[0] == -8


def test_battery_spectrum_binomial():
    diag = np.real(np.diag(build_battery(8, 1.0)))
    for ups in range(9):
        assert np.count_nonzero(diag == 2 * ups - 8) == math.comb(8, ups)


def test_battery_rejects_nonpositive_field():
    with pytest.raises(ValueError):
        build_battery(4, 0.0)


def test_klocal_global_product_term():
    cfg = CouplingConfig(8, h_x=0.0, J=(1, 0, 0), kappa=8)
    np.testing.assert_array_equal(build_charger_klocal(cfg), pauli_string(8, range(8), "x"))


def test_klocal_parallel_field():
    cfg = CouplingConfig(8, h_x=1.0, J=(0, 0, 0), kappa=1)
    expected = sum(pauli_string(8, [j], "x") for j in range(8))
    np.testing.assert_array_equal(build_charger_klocal(cfg), expected)


def test_klocal_two_site_heisenberg():
    H = build_charger_klocal(CouplingConfig(2, h_x=0.0, J=(1, 1, 1), kappa=2))
    # singlet at -3, triplet at +1
    np.testing.assert_allclose(np.linalg.eigvalsh(H), [-3, 1, 1, 1], atol=1e-12)


def test_kappa_out_of_range():
    with pytest.raises(ValueError):
        CouplingConfig(4, kappa=5)


def test_nnn_reduces_to_nearest_neighbour():
    nn = build_charger_klocal(CouplingConfig(6, J=(0.7, 0, 0), kappa=2))
    np.testing.assert_array_equal(build_charger_nnn(6, 0.7, 0.0), nn)


@pytest.mark.parametrize("n, expected", [(8, 13.0), (3, 3.0)])
def test_nnn_norm(n, expected):
    terms = [(1.0, (j, j + 1)) for j in range(n - 1)] + [(1.0, (j, j + 2)) for j in range(n - 2)]
    assert x_string_norm(n, terms) == expected
    assert abs(operator_norm(build_charger_nnn(n, 1.0, 1.0)) - expected) < 1e-8


def test_nnn_needs_three_sites():
    with pytest.raises(ValueError):
        build_charger_nnn(2, 1.0, 1.0)


def test_total_examples():
    H_B = build_battery(1, 1.0)
    np.testing.assert_array_equal(build_total(H_B, np.zeros((2, 2))), H_B)
    np.testing.assert_array_equal(build_total(H_B, transverse_field(1, 1.0)), [[-1, 1], [1, 1]])
    with pytest.raises(ValueError):
        build_total(H_B, np.zeros((4, 4)))


def test_total_fig1_against_term_oracle():
    n = 8
    cfg = CouplingConfig(n, h_z=1.0, h_x=1.0, J=(1, 0, 0), kappa=2)
    H = build_total(build_battery(n, 1.0), build_charger_klocal(cfg))
    ref = sum(pauli_by_action(n, [j], "z") for j in range(n))
    ref = ref + sum(pauli_by_action(n, [j, j + 1], "x") for j in range(n - 1))
    ref = ref + sum(pauli_by_action(n, [j], "x") for j in range(n))
    assert H.shape == (256, 256)
    np.testing.assert_array_equal(H, ref)
    np.testing.assert_array_equal(H, H.conj().T)


def test_norm_anchors():
    assert abs(operator_norm(pauli_string(8, range(8), "x")) - 1) < 1e-8
    assert abs(operator_norm(transverse_field(8, 1.0)) - 8) < 1e-8
    assert operator_norm(np.zeros((4, 4))) == 0


def test_norm_rejects_non_hermitian():
    with pytest.raises(ValueError):
        operator_norm(np.array([[0, 1], [0, 0]], dtype=complex))


def test_normalize_nearest_neighbour_chain():
    H = build_charger_klocal(CouplingConfig(8, J=(1, 0, 0), kappa=2))
    assert x_string_norm(8, [(1.0, (j, j + 1)) for j in range(7)]) == 7
    scaled, s = normalize_to(H, 8)
    assert abs(s - 8 / 7) < 1e-10
    assert abs(operator_norm(scaled) - 8) < 1e-8


def test_normalize_product_term():
    _, s = normalize_to(pauli_string(8, range(8), "x"), 8)
    assert abs(s - 8) < 1e-10


def test_normalize_idempotent():
    H = build_charger_klocal(CouplingConfig(6, h_x=0.3, J=(1, 0.5, 0.2), kappa=3))
    once, _ = normalize_to(H, 6)
    _, s = normalize_to(once, 6)
    assert abs(s - 1) < 1e-10


def test_normalize_zero_operator():
    with pytest.raises(ValueError):
        normalize_to(np.zeros((4, 4)), 2)


@settings(max_examples=25, deadline=None)
@given(
    st.integers(2, 6),
    st.data(),
    st.floats(0.1, 3),
    st.floats(0, 3),
)
def test_x_only_norm_closed_form(n, data, J_x, h_x):
    kappa = data.draw(st.integers(1, n))
    H = build_charger_klocal(CouplingConfig(n, h_x=h_x, J=(J_x, 0, 0), kappa=kappa))
    closed = J_x * (n - kappa + 1) + h_x * n
    assert abs(operator_norm(H) - closed) < 1e-8


@pytest.mark.parametrize("kappa", [1, 3, 5])
def test_kappa_one_field_equivalence(kappa):
    a = build_charger_klocal(CouplingConfig(5, h_x=0.0, J=(0.8, 0, 0), kappa=1))
    b = build_charger_klocal(CouplingConfig(5, h_x=0.8, J=(0, 0, 0), kappa=kappa))
    np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize("J", [(1, 0, 0), (1, 1, 0), (1, 1, 1), (0.3, -0.7, 2)])
def test_builders_exactly_hermitian(J):
    H = build_charger_klocal(CouplingConfig(5, h_x=0.4, J=J, kappa=2))
    np.testing.assert_array_equal(H, H.conj().T)
    np.testing.assert_array_equal(build_charger_nnn(5, 0.3, 1.1), build_charger_nnn(5, 0.3, 1.1).conj().T)


def test_charger_spec_kinds():
    cfg = CouplingConfig(4, h_x=0.5, J=(1, 0, 0), kappa=2, nnn=(1.0, 0.5))
    field = ChargerSpec("parallel_field", cfg).build()
    np.testing.assert_array_equal(field, transverse_field(4, 0.5))
    nnn = ChargerSpec("nnn_extended", cfg).build()
    np.testing.assert_array_equal(nnn, build_charger_nnn(4, 1.0, 0.5) + field)
    fair = ChargerSpec("k_local", cfg, norm_target=4).build()
    assert abs(operator_norm(fair) - 4) < 1e-8
    with pytest.raises(ValueError):
        ChargerSpec("k_local", cfg, norm_target=0)


def test_ground_state_of_battery():
    gs = ground_state(build_battery(8, 1.0))
    np.testing.assert_allclose(gs.state, basis_state(8, [False] * 8), atol=1e-12)
    assert not gs.degenerate and gs.energy == pytest.approx(-8)


def test_ground_state_reversed_two_sites_entangled():
    H = build_battery(2, 1.0) + pauli_string(2, [0, 1], "x")
    # 4x4 oracle: the ground state lives in span{|dd>, |uu>} with
    # matrix [[-2, 1], [1, 2]]; lowest eigenvalue -sqrt(5)
    gs = ground_state(H)
    assert gs.energy == pytest.approx(-math.sqrt(5))
    a = 1 / math.sqrt(1 + (math.sqrt(5) - 2) ** 2)
    b = -(math.sqrt(5) - 2) * a
    expected = np.array([a, 0, 0, b])
    np.testing.assert_allclose(gs.state, expected, atol=1e-12)
    rho = np.outer(gs.state, gs.state.conj())
    assert concurrence(rho) == pytest.approx(2 * abs(a * b), abs=1e-12)
    assert concurrence(rho) > 0


def test_ground_state_shift_invariant():
    H = build_battery(3, 1.0) + build_charger_klocal(CouplingConfig(3, h_x=0.4, J=(1, 0.5, 0), kappa=2))
    a = ground_state(H).state
    b = ground_state(H + 3.7 * np.eye(8)).state
    np.testing.assert_allclose(a, b, atol=1e-10)


def test_ground_state_degenerate_flag_and_determinism():
    H = -pauli_string(2, [0, 1], "z")  # |dd> and |uu> both at -1
    with pytest.warns(DegenerateGroundStateWarning):
        gs = ground_state(H)
    assert gs.degenerate
    # |dd> and |uu> carry equal weight in the ground space; the earliest index wins.
    np.testing.assert_allclose(np.abs(gs.state), [1, 0, 0, 0], atol=1e-12)


def test_ground_state_degenerate_selection_is_a_ground_state():
    H = build_battery(4, 1.0) + build_charger_klocal(CouplingConfig(4, J=(1, 1, 0), kappa=2))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        gs = ground_state(H)
    np.testing.assert_allclose(H @ gs.state, gs.energy * gs.state, atol=1e-9)
    assert abs(np.linalg.norm(gs.state) - 1) < 1e-12
