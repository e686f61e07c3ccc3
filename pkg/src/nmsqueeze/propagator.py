"""Time-domain solution of the memory-kernel equation for the amplitude u(t).

    du/dt + i omega0 u(t) + int_0^t f(t - tau) u(tau) dtau = 0,   u(0) = 1

with f the environment correlation function. The decay/shift rates of the
time-local master equation follow from Gamma(t) + i Omega(t) = -udot/u.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericsError
from .spectral import SpectralModel, correlation_f, lamb_shift_delta, markov_kappa

_RATE_FLOOR = 1e-14  # |u| below this makes -udot/u ill-conditioned


@dataclass(frozen=True)
class PropagatorTrajectory:
    model: SpectralModel
    t_grid: np.ndarray
    u: np.ndarray
    gamma: np.ndarray
    omega_shift: np.ndarray
    valid_rate: np.ndarray = field(repr=False)

    @property
    def dt(self) -> float:
        return float(self.t_grid[1] - self.t_grid[0])


def max_stable_dt(model: SpectralModel) -> float:
    return 0.05 / max(model.omega0, model.omega_c / 10.0)


def default_dt(model: SpectralModel) -> float:
    # resolve the kernel correlation time 1/omega_c with >= 8 points
    return min(0.125 / model.omega_c, max_stable_dt(model))


_GL_T, _GL_W = np.polynomial.legendre.leggauss(12)
_GL_THETA = 0.5 * (_GL_T + 1.0)
_GL_WTS = 0.5 * _GL_W


def _memory_weights(model: SpectralModel, m: int, dt: float):
    """Product-integration weights for the memory convolution.

    The kernel is integrated exactly (Gauss-Legendre per step, exact to
    roundoff for the analytic kernel at this resolution) against a
    piecewise-linear interpolant of u, so the kernel's 1/omega_c spike costs
    no accuracy even when dt resolves it only marginally:

        int_{t_j}^{t_{j+1}} f(t_{n+1} - tau) u(tau) dtau
            ~ A_{n-j} u_j + B_{n-j} u_{j+1},
        A_k = dt int_0^1 f((k + 1 - x) dt) (1 - x) dx,
        B_k = dt int_0^1 f((k + 1 - x) dt) x dx.
    """
    k = np.arange(m + 1, dtype=float)[:, None]
    arg = (k + 1.0 - _GL_THETA[None, :]) * dt
    fv = correlation_f(model, arg)
    a = dt * (fv * ((1.0 - _GL_THETA) * _GL_WTS)[None, :]).sum(axis=1)
    b = dt * (fv * (_GL_THETA * _GL_WTS)[None, :]).sum(axis=1)
    return a, b


def solve_volterra(model: SpectralModel, t_max: float, dt: float | None = None) -> PropagatorTrajectory:
    """Second-order trajectory of u(t) on a uniform grid.

    Parameters
    ----------
    model : SpectralModel
        Environment parameters; sets the memory kernel and omega0.
    t_max : float
        Final time (units 1/omega0).
    dt : float, optional
        Grid step. Defaults to resolving the kernel correlation time; must
        satisfy dt <= 0.05 / max(omega0, omega_c / 10).

    Notes
    -----
    One implicit-trapezoidal step advances the local term while the memory
    convolution uses the product-integration weights above; the equation is
    linear in u_{n+1}, so the corrector is solved exactly instead of being
    iterated. Hitting a non-finite value raises NumericsError.
    """
    if not t_max > 0:
        raise DomainError("t_max must be positive")
    if dt is None:
        dt = default_dt(model)
    if not 0 < dt <= max_stable_dt(model):
        raise DomainError(
            f"dt={dt} outside (0, {max_stable_dt(model):.3e}] for this model"
        )
    m = int(round(t_max / dt))
    t = np.arange(m + 1) * dt
    w0 = model.omega0

    a, b = _memory_weights(model, m, dt)
    # S_{n+1} = A_n u_0 + sum_{l=1}^{n} (A_{n-l} + B_{n+1-l}) u_l; the B_0 u_{n+1}
    # self-term goes into the implicit denominator.
    c = a[:m] + b[1:m + 1]
    crev = np.ascontiguousarray(c[::-1])

    u = np.zeros(m + 1, dtype=complex)
    udot = np.zeros(m + 1, dtype=complex)
    u[0] = 1.0
    udot[0] = -1j * w0
    denom = 1.0 + 0.5 * dt * (1j * w0 + b[0])
    for n in range(m):
        s_mem = np.dot(crev[m - n:], u[1:n + 1]) + a[n] * u[0]
        u[n + 1] = (u[n] + 0.5 * dt * (udot[n] - s_mem)) / denom
        udot[n + 1] = -(1j * w0 + b[0]) * u[n + 1] - s_mem
    if not np.all(np.isfinite(u)):
        raise NumericsError("volterra solution lost finiteness", {"dt": dt, "t_max": t_max})

    gamma, omega_shift, valid = rates_from_solution(u, udot)
    return PropagatorTrajectory(
        model=model, t_grid=t, u=u, gamma=gamma, omega_shift=omega_shift, valid_rate=valid,
    )


def rates_from_solution(u: np.ndarray, udot: np.ndarray):
    """Gamma, Omega from -udot/u; samples with |u| below the floor are flagged invalid."""
    valid = np.abs(u) > _RATE_FLOOR
    ratio = np.zeros_like(u)
    np.divide(udot, u, out=ratio, where=valid)
    gamma = np.where(valid, -ratio.real, np.nan)
    omega_shift = np.where(valid, -ratio.imag, np.nan)
    return gamma, omega_shift, valid


def u_bma(model: SpectralModel, t):
    """Born-Markov closed form e^(-[kappa + i(omega0 + Delta(omega0))] t)."""
    tt = np.asarray(t, dtype=float)
    kappa = markov_kappa(model)
    shift = model.omega0 + lamb_shift_delta(model, model.omega0)
    out = np.exp(-(kappa + 1j * shift) * tt)
    return out if out.ndim else complex(out)
