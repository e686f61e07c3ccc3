"""Ohmic-family spectral density and the scalar functionals derived from it.

Frequencies are expressed in units of the bare spin frequency by default
(omega0 = 1), so times are in units of 1/omega0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import DomainError

# adaptive quadrature targets used throughout this module
_EPSABS = 1e-12
_EPSREL = 1e-10
_TAIL_BOUND = 1e-14


@dataclass(frozen=True)
class SpectralModel:
    """Environment/spin parameter record: J(w) = eta * w^s * omega_c^(1-s) * exp(-w/omega_c)."""

    eta: float
    s: float = 1.0
    omega_c: float = 50.0
    omega0: float = 1.0

    def __post_init__(self):
        if not self.omega0 > 0:
            raise DomainError(f"omega0 must be positive, got {self.omega0}")
        if self.eta < 0:
            raise DomainError(f"eta must be nonnegative, got {self.eta}")
        if not self.s > 0:
            raise DomainError(f"s must be positive, got {self.s}")
        if not self.omega_c > 0:
            raise DomainError(f"omega_c must be positive, got {self.omega_c}")


def tail_cutoff(model: SpectralModel) -> float:
    """Truncation frequency for semi-infinite integrals of J.

    Chosen so the dropped tail integral of J is below an absolute bound;
    starts at omega_c * max(40, s + 40) and extends if the analytic bound
    (upper incomplete gamma) is not yet small enough.
    """
    x = max(40.0, model.s + 40.0)
    while _tail_mass(model, x * model.omega_c) > _TAIL_BOUND and x < 800.0:
        x *= 1.5
    return x * model.omega_c


def _tail_mass(model: SpectralModel, w_cut: float) -> float:
    # integral of J over [w_cut, inf): eta * wc^2 * Gamma(s+1, w_cut/wc)
    g = special.gammaincc(model.s + 1.0, w_cut / model.omega_c) * special.gamma(model.s + 1.0)
    return model.eta * model.omega_c**2 * g


def density_j(model: SpectralModel, omega):
    """Spectral density J(omega); zero at omega = 0 for any s > 0."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise DomainError("density_j requires omega >= 0")
    with np.errstate(divide="ignore"):
        out = np.where(
            w > 0,
            model.eta * np.power(np.where(w > 0, w, 1.0), model.s)
            * model.omega_c**(1.0 - model.s) * np.exp(-w / model.omega_c),
            0.0,
        )
    return out if out.ndim else float(out)


def correlation_f(model: SpectralModel, t):
    """Environment correlation function f(t), the Fourier transform of J over [0, inf).

    Closed form: eta * omega_c^(1-s) * Gamma(s+1) * (1/omega_c + i t)^(-(s+1)).
    """
    tt = np.asarray(t, dtype=float)
    pref = model.eta * model.omega_c**(1.0 - model.s) * special.gamma(model.s + 1.0)
    out = pref * (1.0 / model.omega_c + 1j * tt) ** (-(model.s + 1.0))
    return out if out.ndim else complex(out)


def lamb_shift_delta(model: SpectralModel, omega_ref: float) -> float:
    """Principal-value integral of J(w)/(omega_ref - w) over [0, inf).

    For omega_ref < 0 the integrand is regular and the integral is ordinary.
    For omega_ref > 0 the pole is subtracted: the regular part
    [J(w) - J(omega_ref)]/(omega_ref - w) is integrated numerically and the
    remainder J(omega_ref)/(omega_ref - w) analytically over the truncated range.
    """
    if model.eta == 0.0:
        return 0.0
    w_cut = max(tail_cutoff(model), 2.0 * abs(omega_ref))
    if omega_ref < 0:
        val, _ = integrate.quad(
            lambda w: density_j(model, w) / (omega_ref - w), 0.0, w_cut,
            epsabs=_EPSABS, epsrel=_EPSREL, limit=300,
        )
        return val
    if omega_ref == 0.0:
        if model.s <= 1.0:
            raise DomainError("lamb_shift_delta at omega_ref = 0 is singular for s <= 1")
        val, _ = integrate.quad(
            lambda w: -density_j(model, w) / w, 0.0, w_cut,
            epsabs=_EPSABS, epsrel=_EPSREL, limit=300,
        )
        return val
    j_ref = density_j(model, omega_ref)

    def regular(w):
        if w == omega_ref:
            # limit of the difference quotient: -J'(omega_ref)
            return -_density_j_prime(model, omega_ref)
        return (density_j(model, w) - j_ref) / (omega_ref - w)

    val, _ = integrate.quad(
        regular, 0.0, w_cut,
        epsabs=_EPSABS, epsrel=_EPSREL, limit=400, points=[omega_ref],
    )
    # PV of int_0^W dw/(omega_ref - w) = log(omega_ref / (W - omega_ref))
    return val + j_ref * np.log(omega_ref / (w_cut - omega_ref))


def _density_j_prime(model: SpectralModel, w: float) -> float:
    return density_j(model, w) * (model.s / w - 1.0 / model.omega_c)


def markov_kappa(model: SpectralModel) -> float:
    """Weak-coupling decay rate pi * J(omega0)."""
    return float(np.pi * density_j(model, model.omega0))


def eta_critical(model: SpectralModel) -> float:
    """Coupling threshold omega0 / (omega_c * Gamma(s)) above which a bound state exists."""
    return model.omega0 / (model.omega_c * special.gamma(model.s))
