"""Resolvent-domain analysis of the propagator.

Self-energy function Y(E) below the continuum, bound-state search with its
residue Z, the continuum (branch-cut) density C(E), and the spectral
representation u(t) = Z e^(-i E_b t) + int C(E) e^(-i E t) dE.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, interpolate, special

from .errors import DomainError, NumericsError
from .spectral import (
    SpectralModel,
    density_j,
    eta_critical,
    lamb_shift_delta,
    tail_cutoff,
)

_ROOT_TOL = 1e-10
_EB_DEGENERATE = 1e-8


@dataclass(frozen=True)
class BoundStateReport:
    exists: bool
    eta_critical: float
    y_at_zero: float
    e_b: float | None = None
    z_residue: float | None = None
    threshold_degenerate: bool = False


def y_of_e(model: SpectralModel, e: float) -> float:
    """Self-energy function Y(E) = omega0 - int J(w)/(w - E) dw, defined for E < 0."""
    if e >= 0:
        raise DomainError("y_of_e is defined only below the continuum (e < 0)")
    if model.eta == 0.0:
        return model.omega0
    val, _ = integrate.quad(
        lambda w: density_j(model, w) / (w - e), 0.0, tail_cutoff(model),
        epsabs=1e-12, epsrel=1e-10, limit=300,
    )
    return model.omega0 - val


def y_at_zero(model: SpectralModel) -> float:
    """Limit of Y(E) as E -> 0-: omega0 - eta * omega_c * Gamma(s)."""
    return model.omega0 - model.eta * model.omega_c * special.gamma(model.s)


def find_bound_state(model: SpectralModel) -> BoundStateReport:
    """Locate the isolated root of Y(E) = E below the continuum, if any.

    The root exists iff Y(0) < 0. Bisection runs on [Y(0), 0]: the lower
    endpoint satisfies Y(E) - E > 0 because Y is decreasing, so the bracket
    is guaranteed. The residue is Z = 1 / (1 + int J(w)/(E_b - w)^2 dw).
    """
    etac = eta_critical(model)
    y0 = y_at_zero(model)
    # the strict coupling comparison decides the threshold row itself, where
    # y0 is zero up to rounding and its sign is not trustworthy
    if not model.eta > etac:
        return BoundStateReport(exists=False, eta_critical=etac, y_at_zero=y0)
    if y0 > -1e-13:
        return BoundStateReport(
            exists=True, eta_critical=etac, y_at_zero=y0,
            e_b=min(y0, 0.0), z_residue=None, threshold_degenerate=True,
        )

    g = lambda e: y_of_e(model, e) - e
    lo, hi = y0, 0.0
    if g(lo) <= 0:
        raise NumericsError("bound-state bracket failure", {"lo": lo, "g_lo": g(lo)})
    mid = 0.5 * (lo + hi)
    for _ in range(300):
        gm = g(mid)
        if abs(gm) < _ROOT_TOL:
            break
        if gm > 0:
            lo = mid
        else:
            hi = mid
        mid = 0.5 * (lo + hi)
    else:
        raise NumericsError(
            "bound-state bisection did not converge",
            {"bracket": (lo, hi), "residual": g(mid)},
        )
    if abs(mid) <= _EB_DEGENERATE:
        # residue integral degenerates as E_b -> 0-; flag instead of guessing
        return BoundStateReport(
            exists=True, eta_critical=etac, y_at_zero=y0,
            e_b=mid, z_residue=None, threshold_degenerate=True,
        )
    corr, _ = integrate.quad(
        lambda w: density_j(model, w) / (mid - w) ** 2, 0.0, tail_cutoff(model),
        epsabs=1e-13, epsrel=1e-11, limit=400,
    )
    return BoundStateReport(
        exists=True, eta_critical=etac, y_at_zero=y0,
        e_b=mid, z_residue=1.0 / (1.0 + corr),
    )


def branch_cut_density(model: SpectralModel, e: float) -> float:
    """Continuum density C(E) = J(E) / {[E - omega0 - Delta(E)]^2 + [pi J(E)]^2} for E > 0."""
    if e <= 0:
        raise DomainError("branch_cut_density requires e > 0")
    if model.eta == 0.0:
        return 0.0
    j_e = density_j(model, e)
    d_e = lamb_shift_delta(model, e)
    return j_e / ((e - model.omega0 - d_e) ** 2 + (np.pi * j_e) ** 2)


def dressed_resonance(model: SpectralModel) -> float | None:
    """Positive root of E = omega0 + Delta(E), where C(E) peaks; None if absent.

    The root exists only without a bound state (Y(0) > 0); once the bound
    state forms it migrates to negative energy and the continuum density
    turns into a broad structureless bump.
    """
    g = lambda e: e - model.omega0 - lamb_shift_delta(model, e)
    lo = 1e-9
    hi = tail_cutoff(model)
    if g(lo) >= 0 or g(hi) <= 0:
        return None
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-12 * max(1.0, mid):
            break
    return 0.5 * (lo + hi)


def continuum_weight(model: SpectralModel) -> float:
    """Adaptive integral of C(E) over (0, inf); equals 1 - Z by the sum rule."""
    if model.eta == 0.0:
        return 0.0
    w_cut = tail_cutoff(model)
    hints = [model.omega0, 2.0 * model.omega0]
    e_r = dressed_resonance(model)
    if e_r is not None:
        width = max(np.pi * density_j(model, e_r), 1e-9)
        hints = [e_r - width, e_r, e_r + width, e_r + 10 * width]
    hints = sorted({h for h in hints if 0.0 < h < w_cut})
    val, err = integrate.quad(
        lambda e: branch_cut_density(model, e), 0.0, w_cut,
        epsabs=1e-11, epsrel=1e-9, limit=500, points=hints,
    )
    if err > 1e-7:
        raise NumericsError("continuum_weight quadrature error too large", {"estimate": err})
    return val


@lru_cache(maxsize=8)
def _continuum_spline(model: SpectralModel):
    """Cubic-spline interpolant of C(E) on a structure-resolving grid.

    The grid is dense over the low-energy window where C varies, refined
    around the dressed resonance (if present) on the scale of its width
    pi*J(E_r), and geometrically graded out to the tail cutoff.
    """
    w_cut = tail_cutoff(model)
    lo_hi = max(6.0 * model.omega0, 2.0 * abs(y_at_zero(model)) + 2.0 * model.omega0)
    lo_hi = min(lo_hi, 0.5 * w_cut)
    pieces = [np.linspace(1e-9, lo_hi, 3001)]
    e_r = dressed_resonance(model)
    if e_r is not None:
        width = max(np.pi * density_j(model, e_r), 1e-7)
        win = 40.0 * width
        pieces.append(np.linspace(max(1e-9, e_r - win), min(w_cut, e_r + win), 2401))
    # graded coarse section toward the cutoff; C is exponentially small there
    pieces.append(np.geomspace(lo_hi, w_cut, 800))
    grid = np.unique(np.concatenate(pieces))
    vals = np.array([branch_cut_density(model, e) for e in grid])
    return interpolate.CubicSpline(grid, vals), grid


_GAUSS_NODES, _GAUSS_WTS = np.polynomial.legendre.leggauss(5)


def _oscillatory_nodes(grid: np.ndarray, t_max: float):
    """Panel nodes/weights for int C(E) e^(-iEt) dE, resolving both C and the phase.

    Panels follow the spline grid (which resolves C) subdivided so that no
    panel exceeds pi/(8 t_max) in width; Gauss-Legendre 5 per panel then
    integrates the product to spline accuracy for every t <= t_max.
    """
    width = np.diff(grid)
    if t_max > 0:
        h_phase = np.pi / (8.0 * t_max)
        nsub = np.maximum(1, np.ceil(width / h_phase).astype(np.int64))
    else:
        nsub = np.ones(len(width), dtype=np.int64)
    reps = np.repeat(np.arange(len(width)), nsub)
    offs = np.concatenate([np.arange(k) for k in nsub]) if len(nsub) else np.array([])
    sub_w = width[reps] / nsub[reps]
    lefts = grid[:-1][reps] + offs * sub_w
    mid = lefts + 0.5 * sub_w
    half = 0.5 * sub_w
    nodes = (mid[:, None] + half[:, None] * _GAUSS_NODES[None, :]).ravel()
    wts = (half[:, None] * _GAUSS_WTS[None, :]).ravel()
    return nodes, wts


def u_spectral_grid(model: SpectralModel, ts) -> np.ndarray:
    """Spectral-representation u(t) evaluated on an array of times t >= 0."""
    ts = np.asarray(ts, dtype=float)
    if np.any(ts < 0):
        raise DomainError("u_spectral requires t >= 0")
    if model.eta == 0.0:
        # degenerate limit: the resolvent has a unit-residue pole at omega0
        return np.exp(-1j * model.omega0 * ts)
    report = find_bound_state(model)
    spline, grid = _continuum_spline(model)
    nodes, wts = _oscillatory_nodes(grid, float(ts.max(initial=0.0)))
    cw = wts * spline(nodes)
    # double chunking bounds the (n_t x n_nodes) phase temporary
    flat = ts.ravel()
    res = np.zeros(flat.shape, dtype=complex)
    t_step = 16
    n_step = max(1, int(4e6 / t_step))
    for i in range(0, len(flat), t_step):
        tt = flat[i:i + t_step]
        acc = np.zeros(len(tt), dtype=complex)
        for k in range(0, len(nodes), n_step):
            acc += np.exp(-1j * np.outer(tt, nodes[k:k + n_step])) @ cw[k:k + n_step]
        res[i:i + t_step] = acc
    out = res.reshape(ts.shape)
    if report.exists:
        if report.z_residue is None:
            raise NumericsError(
                "bound state is threshold-degenerate; spectral u(t) unavailable",
                {"e_b": report.e_b},
            )
        out = out + report.z_residue * np.exp(-1j * report.e_b * ts)
    return out


def u_spectral(model: SpectralModel, t: float) -> complex:
    """Contour-integral representation of u(t): bound-state pole plus continuum."""
    return complex(u_spectral_grid(model, np.array([t]))[0])


def u_asymptotic(report: BoundStateReport, t) -> complex:
    """Long-time limit of u(t): 0 without a bound state, Z e^(-i E_b t) with one."""
    tt = np.asarray(t, dtype=float)
    if not report.exists:
        out = np.zeros(tt.shape, dtype=complex)
        return out if out.ndim else complex(out)
    if report.z_residue is None:
        raise NumericsError("threshold-degenerate bound state has no resolved residue")
    out = report.z_residue * np.exp(-1j * report.e_b * tt)
    return out if out.ndim else complex(out)
