"""Collective-spin algebra in the maximal Dicke sector (j = N/2).

States are complex amplitude vectors over |j, m>, m = -j..j, indexed so that
entry 0 is the lowest-weight state |j, -j> (all spins in the ground state).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.linalg import eigh

from .errors import DomainError

_NORM_TOL = 1e-10


class DickeOperators(NamedTuple):
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    jplus: np.ndarray
    jminus: np.ndarray


@dataclass(frozen=True)
class CollectiveState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("CollectiveState needs n >= 2")
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.n + 1,):
            raise DomainError(f"amplitudes must have length n+1={self.n + 1}")
        norm2 = float(np.sum(np.abs(amp) ** 2))
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise DomainError(f"state norm^2 deviates from 1 by {abs(norm2 - 1.0):.2e}")
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def ground(cls, n: int) -> "CollectiveState":
        amp = np.zeros(n + 1, dtype=complex)
        amp[0] = 1.0
        return cls(n=n, amplitudes=amp)


@dataclass(frozen=True)
class InitialMoments:
    n: int
    jz_mean: float
    jperp2_sum: float        # <Jx^2 + Jy^2>
    jminus2: complex         # <J_-^2>
    sigma_z_single: float    # <sigma_1^z>
    pair_pm: complex         # <sigma_1 sigma_2^dag>
    pair_mm: complex         # <sigma_1 sigma_2>


@lru_cache(maxsize=64)
def dicke_operators(n: int) -> DickeOperators:
    """Matrices of J_x, J_y, J_z, J_+, J_- on the (n+1)-dimensional Dicke ladder."""
    if n < 2:
        raise DomainError("dicke_operators needs n >= 2")
    j = n / 2.0
    m = np.arange(n + 1) - j
    jz = np.diag(m).astype(complex)
    coup = np.sqrt(j * (j + 1.0) - m[:-1] * (m[:-1] + 1.0))
    jplus = np.zeros((n + 1, n + 1), dtype=complex)
    jplus[np.arange(1, n + 1), np.arange(n)] = coup
    jminus = jplus.conj().T.copy()
    jx = 0.5 * (jplus + jminus)
    jy = -0.5j * (jplus - jminus)
    for mat in (jx, jy, jz, jplus, jminus):
        mat.flags.writeable = False
    return DickeOperators(jx=jx, jy=jy, jz=jz, jplus=jplus, jminus=jminus)


@lru_cache(maxsize=32)
def _oat_eigensystem(n: int):
    ops = dicke_operators(n)
    w, v = eigh(ops.jx @ ops.jx)
    return w, v, v.conj().T[:, 0].copy()  # last: first column of V^dag applied to |j,-j>


@lru_cache(maxsize=32)
def _tat_eigensystem(n: int):
    ops = dicke_operators(n)
    h = -1j * (ops.jplus @ ops.jplus - ops.jminus @ ops.jminus)
    w, v = eigh(h)
    return w, v, v.conj().T[:, 0].copy()


def oat_state(n: int, theta: float) -> CollectiveState:
    """One-axis-twisted state: exp(-i theta Jx^2) applied to |j, -j>."""
    w, v, c0 = _oat_eigensystem(n)
    amp = v @ (np.exp(-1j * theta * w) * c0)
    amp = amp / np.linalg.norm(amp)
    return CollectiveState(n=n, amplitudes=amp)


def tat_state(n: int, theta: float) -> CollectiveState:
    """Two-axis-twisted state: the unitary exp(theta (J_+^2 - J_-^2)) on |j, -j>.

    The exponent is anti-Hermitian, so the map is exactly norm-preserving;
    it is applied through the eigenphases of the Hermitian generator
    -i (J_+^2 - J_-^2).
    """
    w, v, c0 = _tat_eigensystem(n)
    amp = v @ (np.exp(1j * theta * w) * c0)
    amp = amp / np.linalg.norm(amp)
    return CollectiveState(n=n, amplitudes=amp)


def initial_moments(state: CollectiveState) -> InitialMoments:
    """Collective first/second moments and the pairwise correlators they encode.

    The pair correlators follow from permutation symmetry:
        <s1 s2^dag + s2 s1^dag> = [2 <Jx^2 + Jy^2>/N - 1] / (N - 1)
        <s1 s2>                 = <J_-^2> / [N (N - 1)]
    and <s1 s2^dag> is real for a permutation-symmetric state, so the
    symmetrized sum determines it.
    """
    n = state.n
    ops = dicke_operators(n)
    amp = state.amplitudes
    j = n / 2.0

    jz_mean = float(np.real(np.vdot(amp, ops.jz @ amp)))
    jz2 = float(np.real(np.vdot(amp, ops.jz @ (ops.jz @ amp))))
    jperp2 = j * (j + 1.0) - jz2
    jminus2 = complex(np.vdot(amp, ops.jminus @ (ops.jminus @ amp)))

    pair_pm = complex((2.0 * jperp2 / n - 1.0) / (2.0 * (n - 1.0)))
    pair_mm = jminus2 / (n * (n - 1.0))
    return InitialMoments(
        n=n,
        jz_mean=jz_mean,
        jperp2_sum=float(jperp2),
        jminus2=jminus2,
        sigma_z_single=2.0 * jz_mean / n,
        pair_pm=pair_pm,
        pair_mm=pair_mm,
    )


_THETA_LO, _THETA_HI = 1e-4, np.pi / 4
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def optimize_theta(n: int, model_kind: str, u_mod2: float = 1.0) -> tuple[float, float]:
    """Twist angle minimizing the squeezing parameter at a given |u|^2.

    A 400-point log grid over [1e-4, pi/4] brackets the minimum, then
    golden-section refines it. If the coarse scan puts the minimum on the
    window edge (non-unimodal or out-of-window landscape) the dense-scan
    value is returned and a warning is emitted.
    """
    if model_kind not in ("oat", "tat"):
        raise DomainError(f"model_kind must be 'oat' or 'tat', got {model_kind!r}")
    fun = _xi2_of_theta(n, model_kind, u_mod2)
    thetas = np.geomspace(_THETA_LO, _THETA_HI, 400)
    vals = np.array([fun(t) for t in thetas])
    i = int(np.argmin(vals))
    if i == 0 or i == len(thetas) - 1:
        warnings.warn(
            "optimize_theta: minimum at window edge; returning dense-scan value",
            stacklevel=2,
        )
        return float(thetas[i]), float(vals[i])
    a, b = thetas[i - 1], thetas[i + 1]
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(120):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fun(d)
        if b - a < 1e-12 * b:
            break
    tb = 0.5 * (a + b)
    return float(tb), float(fun(tb))


def _xi2_of_theta(n: int, model_kind: str, u_mod2: float):
    # local imports: squeezing depends on this module for InitialMoments
    from .squeezing import xi2_oat_formula, xi2_tat_formula

    if model_kind == "oat":
        return lambda th: xi2_oat_formula(n, th, u_mod2)

    w, v, c0 = _tat_eigensystem(n)
    ops = dicke_operators(n)
    j = n / 2.0
    m2 = (np.arange(n + 1) - j) ** 2
    jmm = ops.jminus @ ops.jminus

    def fun(th):
        amp = v @ (np.exp(1j * th * w) * c0)
        jperp2 = j * (j + 1.0) - float(np.abs(amp) ** 2 @ m2)
        jm2 = complex(np.vdot(amp, jmm @ amp))
        return xi2_tat_formula(n, _bare_moments(n, jperp2, jm2), u_mod2)

    return fun


def _bare_moments(n: int, jperp2: float, jminus2: complex) -> InitialMoments:
    return InitialMoments(
        n=n, jz_mean=np.nan, jperp2_sum=jperp2, jminus2=jminus2,
        sigma_z_single=np.nan,
        pair_pm=complex((2.0 * jperp2 / n - 1.0) / (2.0 * (n - 1.0))),
        pair_mm=jminus2 / (n * (n - 1.0)),
    )
