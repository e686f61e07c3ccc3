"""Dicke-ladder operators, twisted-state preparation, and moment extraction."""

import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import eigh

from nmsqueeze import (
    CollectiveState,
    DomainError,
    dicke_operators,
    initial_moments,
    oat_state,
    optimize_theta,
    tat_state,
)
from nmsqueeze.channel_oracle import collective_operators_dense, embed_dicke_vector
from nmsqueeze.squeezing import oat_ab, oat_pair_correlators


def test_jz_diagonal_n2():
    ops = dicke_operators(2)
    assert_allclose(np.diag(ops.jz).real, [-1.0, 0.0, 1.0], atol=1e-15)


@pytest.mark.parametrize("n", [2, 10, 100])
def test_su2_commutator(n):
    ops = dicke_operators(n)
    comm = ops.jx @ ops.jy - ops.jy @ ops.jx
    # product entries reach (n/2)^2, so exactness means roundoff at that scale
    bound = max(1e-13, 100 * np.finfo(float).eps * (n / 2.0) ** 2)
    assert np.max(np.abs(comm - 1j * ops.jz)) < bound


def test_raising_annihilates_top():
    ops = dicke_operators(6)
    top = np.zeros(7, dtype=complex)
    top[-1] = 1.0
    assert np.max(np.abs(ops.jplus @ top)) == 0.0


def test_oat_identity_at_zero_twist():
    state = oat_state(5, 0.0)
    assert_allclose(state.amplitudes, np.eye(6)[0], atol=1e-14)


def test_oat_single_spin_moment():
    # <sigma_1^z> = -cos^(2j-1)(theta)
    for n, theta in ((2, 0.3), (6, 0.2), (9, 0.45)):
        mom = initial_moments(oat_state(n, theta))
        assert_allclose(mom.sigma_z_single, -np.cos(theta) ** (n - 1), atol=1e-12)


@pytest.mark.parametrize("n", [4, 6, 8])
@pytest.mark.parametrize("theta", [0.1, 0.3])
def test_oat_pair_correlators_closed_form(n, theta):
    mom = initial_moments(oat_state(n, theta))
    pm, mm = oat_pair_correlators(n, theta)
    a, b = oat_ab(n, theta)
    assert_allclose(mom.pair_pm, a / 8.0, atol=1e-10)
    assert_allclose(mom.pair_mm, mm, atol=1e-10)
    assert_allclose(abs(mom.pair_mm), np.hypot(a, b) / 8.0, atol=1e-10)


def test_oat_against_product_space_exponential():
    # dense 2^n construction of exp(-i theta Jx^2) acting on |g...g>
    n, theta = 4, 0.37
    jx, _, _ = collective_operators_dense(n)
    w, v = eigh(jx @ jx)
    ground = np.zeros(2**n, dtype=complex)
    ground[-1] = 1.0  # all sites in ground (bit 1)
    psi_dense = v @ (np.exp(-1j * theta * w) * (v.conj().T @ ground))
    psi_embedded = embed_dicke_vector(oat_state(n, theta))
    assert np.max(np.abs(psi_dense - psi_embedded)) < 1e-10


def test_tat_trivial_and_parity():
    state = tat_state(7, 0.0)
    assert_allclose(state.amplitudes, np.eye(8)[0], atol=1e-14)
    twisted = tat_state(7, 0.2)
    # J_+/-^2 shifts the excitation number by 2: odd entries stay empty
    assert np.max(np.abs(twisted.amplitudes[1::2])) < 1e-14
    assert np.max(np.abs(twisted.amplitudes[0::2])) > 0.1


@pytest.mark.parametrize("n", [2, 10, 100, 1000])
def test_preparation_unitarity(n):
    for state in (oat_state(n, 0.17), tat_state(n, 0.02)):
        assert abs(np.sum(np.abs(state.amplitudes) ** 2) - 1.0) < 1e-12


def test_ground_state_moments():
    mom = initial_moments(CollectiveState.ground(10))
    assert_allclose(mom.jperp2_sum, 5.0, atol=1e-13)
    assert mom.jminus2 == 0.0
    assert_allclose(mom.jz_mean, -5.0, atol=1e-13)


@pytest.mark.parametrize("make", [lambda: oat_state(8, 0.3), lambda: tat_state(8, 0.1)])
def test_moment_inversion_roundtrip(make):
    mom = initial_moments(make())
    n = mom.n
    jperp2 = n / 2.0 + n * (n - 1.0) * mom.pair_pm.real
    jminus2 = n * (n - 1.0) * mom.pair_mm
    assert_allclose(jperp2, mom.jperp2_sum, atol=1e-10)
    assert_allclose(jminus2, mom.jminus2, atol=1e-10)


def test_state_validation():
    with pytest.raises(DomainError):
        CollectiveState(n=4, amplitudes=np.array([1.0, 1.0, 0, 0, 0], dtype=complex))
    with pytest.raises(DomainError):
        CollectiveState(n=1, amplitudes=np.array([1.0, 0.0], dtype=complex))


def test_optimize_theta_oat_scaling():
    theta, xi2 = optimize_theta(100, "oat", u_mod2=1.0)
    assert abs(theta / (3 ** (1 / 6) * 100 ** (-2 / 3)) - 1.0) < 0.05
    assert abs(xi2 / (1.04 * 100 ** (-2 / 3)) - 1.0) < 0.10


def test_optimize_theta_fully_decohered():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # flat landscape hits the window edge
        _, xi2 = optimize_theta(50, "oat", u_mod2=0.0)
        assert xi2 == pytest.approx(1.0, abs=1e-12)
        _, xi2_tat = optimize_theta(20, "tat", u_mod2=0.0)
        assert xi2_tat == pytest.approx(1.0, abs=1e-12)


def test_optimize_theta_tat_heisenberg_scaling():
    _, xi2 = optimize_theta(50, "tat", u_mod2=1.0)
    assert abs(xi2 / (2.0 / 50.0) - 1.0) < 0.15


def test_optimize_theta_rejects_unknown_kind():
    with pytest.raises(DomainError):
        optimize_theta(20, "three-axis")
