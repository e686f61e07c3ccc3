"""Spectral density and derived scalar functionals."""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate
from scipy.special import gamma as gamma_fn

from nmsqueeze import (
    DomainError,
    SpectralModel,
    correlation_f,
    density_j,
    eta_critical,
    lamb_shift_delta,
    markov_kappa,
    solve_volterra,
)
from nmsqueeze.spectrum import y_at_zero


def test_density_reference_value():
    model = SpectralModel(eta=0.01, s=1.0, omega_c=50.0)
    assert_allclose(density_j(model, 1.0), 0.01 * np.exp(-0.02), rtol=1e-12)
    assert_allclose(density_j(model, 1.0), 0.0098020, rtol=1e-4)


def test_density_high_precision_spotcheck():
    # mpmath oracle at 50 digits on three fixed sample points
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 50
    model = SpectralModel(eta=0.017, s=0.7, omega_c=23.0)
    for w in (0.31, 4.7, 61.0):
        exact = mp.mpf("0.017") * mp.mpf(w) ** mp.mpf("0.7") * mp.mpf(23) ** mp.mpf("0.3") * mp.e ** (-mp.mpf(w) / 23)
        assert_allclose(density_j(model, w), float(exact), rtol=1e-13)


def test_density_edges():
    model = SpectralModel(eta=0.01, s=0.5, omega_c=50.0)
    assert density_j(model, 0.0) == 0.0
    assert density_j(SpectralModel(eta=0.0), 3.0) == 0.0
    with pytest.raises(DomainError):
        density_j(model, -1.0)


def test_density_nonnegative_and_tail_decay():
    model = SpectralModel(eta=0.05, s=2.0, omega_c=10.0)
    w = np.linspace(0, 400, 2001)
    j = density_j(model, w)
    assert np.all(j >= 0)
    tail = j[w > model.s * model.omega_c]
    assert np.all(np.diff(tail) <= 0)


def test_correlation_at_zero_matches_quadrature():
    model = SpectralModel(eta=0.01, s=1.0, omega_c=50.0)
    assert_allclose(correlation_f(model, 0.0), 25.0, rtol=1e-12)
    val, _ = integrate.quad(lambda w: density_j(model, w), 0, 4000, limit=400)
    assert_allclose(correlation_f(model, 0.0).real, val, rtol=1e-9)
    assert correlation_f(SpectralModel(eta=0.0), 1.0) == 0.0


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
def test_correlation_closed_form_vs_fourier_quadrature(s, t):
    # independent oracle: oscillatory-weight quadrature of J on [0, W];
    # the dropped tail is below 1e-20 of the result at W = 60 omega_c
    model = SpectralModel(eta=0.03, s=s, omega_c=50.0)
    w_cut = 60.0 * model.omega_c
    re, _ = integrate.quad(lambda w: density_j(model, w), 0, w_cut,
                           weight="cos", wvar=t, epsabs=1e-13, epsrel=1e-11, limit=2000)
    im, _ = integrate.quad(lambda w: density_j(model, w), 0, w_cut,
                           weight="sin", wvar=t, epsabs=1e-13, epsrel=1e-11, limit=2000)
    oracle = re - 1j * im
    assert abs(correlation_f(model, t) - oracle) / abs(oracle) < 1e-8


def test_correlation_modulus_nonincreasing():
    for s in (1.0, 2.0):
        model = SpectralModel(eta=0.02, s=s, omega_c=50.0)
        t = np.linspace(0, 20, 400)
        mod = np.abs(correlation_f(model, t))
        assert np.all(np.diff(mod) <= 1e-15)


def _lamb_shift_excision_oracle(model, omega_ref, eps=1e-5):
    # split-interval quadrature with symmetric excision of the pole; the
    # O(eps) excision bias cancels under Richardson over two widths
    w_cut = 50.0 * model.omega_c
    f = lambda w: density_j(model, w) / (omega_ref - w)

    def excised(e):
        left, _ = integrate.quad(f, 0, omega_ref - e, epsabs=1e-13, epsrel=1e-11, limit=400)
        right, _ = integrate.quad(f, omega_ref + e, w_cut, epsabs=1e-13, epsrel=1e-11, limit=400)
        return left + right

    return 2.0 * excised(eps) - excised(2.0 * eps)


def test_lamb_shift_values():
    assert lamb_shift_delta(SpectralModel(eta=0.0), 1.0) == 0.0
    model = SpectralModel(eta=0.01, s=1.0, omega_c=50.0)
    val = lamb_shift_delta(model, 1.0)
    assert val < 0  # most of J's weight lies above omega0
    oracle = _lamb_shift_excision_oracle(model, 1.0)
    assert_allclose(val, oracle, rtol=0, atol=1e-8)


def test_lamb_shift_closed_form_ohmic():
    # s = 1 closed form: eta * (E e^(-E/wc) Ei(E/wc) - wc)
    from scipy.special import expi

    model = SpectralModel(eta=0.01, s=1.0, omega_c=50.0)
    for e in (0.3, 1.0, 2.5):
        exact = model.eta * (e * np.exp(-e / 50.0) * expi(e / 50.0) - 50.0)
        assert_allclose(lamb_shift_delta(model, e), exact, rtol=1e-9)


def test_lamb_shift_negative_argument_is_plain_integral():
    model = SpectralModel(eta=0.02, s=1.5, omega_c=30.0)
    val = lamb_shift_delta(model, -5.0)
    oracle, _ = integrate.quad(lambda w: density_j(model, w) / (w + 5.0), 0, 2000, limit=300)
    assert_allclose(val, -oracle, rtol=1e-9)


def test_lamb_shift_zero_argument():
    with pytest.raises(DomainError):
        lamb_shift_delta(SpectralModel(eta=0.01, s=1.0), 0.0)
    with pytest.raises(DomainError):
        lamb_shift_delta(SpectralModel(eta=0.01, s=0.5), 0.0)
    model = SpectralModel(eta=0.01, s=2.0, omega_c=50.0)
    # convergent for s > 1: -int J/w = -eta * wc * Gamma(s)
    assert_allclose(lamb_shift_delta(model, 0.0), -0.01 * 50.0 * gamma_fn(2.0), rtol=1e-9)


def test_markov_kappa_values():
    assert_allclose(
        markov_kappa(SpectralModel(eta=0.01, s=1.0, omega_c=50.0)),
        np.pi * 0.01 * np.exp(-0.02), rtol=1e-12,
    )
    assert_allclose(
        markov_kappa(SpectralModel(eta=0.01, s=1.0, omega_c=50.0)), 0.030794, rtol=1e-4
    )
    assert markov_kappa(SpectralModel(eta=0.0)) == 0.0
    assert_allclose(
        markov_kappa(SpectralModel(eta=0.01, s=2.0, omega_c=50.0)),
        np.pi * 0.01 * (1 / 50.0) * np.exp(-0.02), rtol=1e-12,
    )


def test_eta_critical_values():
    assert eta_critical(SpectralModel(eta=0.03, s=1.0, omega_c=50.0)) == 0.02
    assert eta_critical(SpectralModel(eta=0.1, s=1.0, omega_c=1.0)) == 1.0
    assert_allclose(eta_critical(SpectralModel(eta=0.1, s=3.0, omega_c=10.0)), 0.05, rtol=1e-14)


def test_eta_critical_decreasing_in_cutoff():
    vals = [eta_critical(SpectralModel(eta=0.1, s=0.8, omega_c=wc)) for wc in (5, 10, 20, 40)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("eta", [0.005, 0.019, 0.021, 0.08])
@pytest.mark.parametrize("s,omega_c", [(0.5, 80.0), (1.0, 50.0), (2.0, 20.0)])
def test_threshold_consistent_with_y_at_zero(eta, s, omega_c):
    model = SpectralModel(eta=eta, s=s, omega_c=omega_c)
    assert (y_at_zero(model) < 0) == (eta > eta_critical(model))


def test_scale_covariance():
    # frequencies x2, time /2: dimensionless outputs unchanged
    lam = 2.0
    base = SpectralModel(eta=0.03, s=1.0, omega_c=50.0, omega0=1.0)
    scaled = SpectralModel(eta=0.03, s=1.0, omega_c=50.0 * lam, omega0=lam)
    assert_allclose(eta_critical(base), eta_critical(scaled), rtol=1e-14)
    t_base = solve_volterra(base, t_max=5.0, dt=2.5e-3)
    t_scaled = solve_volterra(scaled, t_max=5.0 / lam, dt=2.5e-3 / lam)
    assert_allclose(np.abs(t_scaled.u), np.abs(t_base.u), atol=1e-10)
