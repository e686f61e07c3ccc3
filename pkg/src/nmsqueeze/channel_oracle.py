"""Brute-force reference implementations on the full 2^N product space.

Basis conventions: site 1 is the most significant tensor factor and the
excited level is index 0 within a site, so the damping Kraus pair reads
K1 = diag(u, 1), K2 = sqrt(1 - |u|^2) * lowering.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import NamedTuple

import numpy as np

from .collective import CollectiveState
from .errors import CapacityError, DomainError, NumericsError
from .propagator import PropagatorTrajectory
from .spectral import SpectralModel

MAX_SITES = 12

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_LOWER = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |g><e|
IDENTITY_2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class KrausPair:
    u: complex

    def __post_init__(self):
        if abs(self.u) > 1.0 + 1e-12:
            raise DomainError(f"|u| must be <= 1, got {abs(self.u)}")

    @property
    def k1(self) -> np.ndarray:
        return np.array([[self.u, 0.0], [0.0, 1.0]], dtype=complex)

    @property
    def k2(self) -> np.ndarray:
        return np.sqrt(max(0.0, 1.0 - abs(self.u) ** 2)) * SIGMA_LOWER


@dataclass(frozen=True)
class DensityMatrix:
    n: int
    entries: np.ndarray

    def __post_init__(self):
        if self.n > MAX_SITES:
            raise CapacityError(f"n={self.n} exceeds the brute-force cap {MAX_SITES}")
        dim = 2**self.n
        ent = np.asarray(self.entries, dtype=complex)
        if ent.shape != (dim, dim):
            raise DomainError(f"entries must be {dim}x{dim}")
        if abs(np.trace(ent) - 1.0) > 1e-12:
            raise DomainError(f"trace deviates from 1 by {abs(np.trace(ent) - 1.0):.2e}")
        if np.max(np.abs(ent - ent.conj().T)) > 1e-12:
            raise DomainError("entries are not Hermitian to 1e-12")
        object.__setattr__(self, "entries", ent)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])


def apply_channel(rho: DensityMatrix, kraus: KrausPair) -> DensityMatrix:
    """Apply the single-spin damping channel independently on every site."""
    n = rho.n
    dim = 2**n
    ops = (kraus.k1, kraus.k2)
    ent = rho.entries
    for site in range(n):
        left = 2**site
        right = 2 ** (n - site - 1)
        rt = ent.reshape(left, 2, right, left, 2, right)
        acc = np.zeros_like(rt)
        for k in ops:
            tmp = np.einsum("ab,ibjkcl->iajkcl", k, rt)
            acc += np.einsum("iajkcl,dc->iajkdl", tmp, k.conj())
        ent = acc.reshape(dim, dim)
    return DensityMatrix(n=n, entries=ent)


def pullback_sigma(kraus: KrausPair) -> tuple[np.ndarray, np.ndarray]:
    """Heisenberg-picture images of the lowering operator and sigma^z.

    The channel adjoint sends sigma -> u sigma and
    sigma^z -> |u|^2 sigma^z - (1 - |u|^2) I.
    """
    um2 = abs(kraus.u) ** 2
    return kraus.u * SIGMA_LOWER, um2 * SIGMA_Z - (1.0 - um2) * IDENTITY_2


def embed_dicke(state: CollectiveState) -> DensityMatrix:
    """Pure-state density matrix of a Dicke-sector state on the full product space.

    |j, m> expands into the equal-amplitude superposition of all basis
    strings with j + m excited sites, weight 1/sqrt(C(n, j+m)).
    """
    vec = embed_dicke_vector(state)
    return DensityMatrix(n=state.n, entries=np.outer(vec, vec.conj()))


def embed_dicke_vector(state: CollectiveState) -> np.ndarray:
    n = state.n
    if n > MAX_SITES:
        raise CapacityError(f"n={n} exceeds the brute-force cap {MAX_SITES}")
    idx = np.arange(2**n, dtype=np.uint64)
    # excited = bit 0, so the excitation count is n minus the popcount
    k = n - np.bitwise_count(idx).astype(np.int64)
    weights = np.array([state.amplitudes[kk] / np.sqrt(comb(n, kk)) for kk in range(n + 1)])
    return weights[k]


def site_marginal(rho: DensityMatrix, site: int) -> np.ndarray:
    n = rho.n
    left = 2**site
    right = 2 ** (n - site - 1)
    rt = rho.entries.reshape(left, 2, right, left, 2, right)
    return np.einsum("iajibj->ab", rt)


def pair_marginal(rho: DensityMatrix, site_a: int, site_b: int) -> np.ndarray:
    """Two-site reduced density matrix, ordered (site_a, site_b)."""
    if site_a == site_b:
        raise DomainError("pair_marginal needs distinct sites")
    n = rho.n
    axes = list(range(2 * n))
    t = rho.entries.reshape([2] * (2 * n))
    order = [site_a, site_b] + [i for i in range(n) if i not in (site_a, site_b)]
    perm = order + [n + i for i in order]
    t = t.transpose(perm)
    rest = 2 ** (n - 2)
    t = t.reshape(4, rest, 4, rest)
    return np.einsum("aibi->ab", t)


class CollectiveMoments(NamedTuple):
    first: np.ndarray        # (<Jx>, <Jy>, <Jz>)
    second: np.ndarray       # symmetrized 3x3 matrix <J_a J_b + J_b J_a>/2
    jperp2_sum: float        # <Jx^2 + Jy^2>
    jminus2: complex         # <J_-^2>


_PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def collective_moments(rho: DensityMatrix) -> CollectiveMoments:
    """Exact collective first and second moments from one- and two-site marginals."""
    n = rho.n
    singles = [site_marginal(rho, l) for l in range(n)]
    first = 0.5 * np.array(
        [sum(np.trace(p @ m).real for m in singles) for p in _PAULI]
    )

    second = np.zeros((3, 3))
    # single-site part: sum_l <sigma^a sigma^b + sigma^b sigma^a>_l / 8
    for a in range(3):
        for b in range(3):
            anti = _PAULI[a] @ _PAULI[b] + _PAULI[b] @ _PAULI[a]
            second[a, b] += sum(np.trace(anti @ m).real for m in singles) / 8.0
    # two-site part; each unordered pair stands for both orderings of (l, m)
    for la in range(n):
        for lb in range(la + 1, n):
            pm = pair_marginal(rho, la, lb)
            for a in range(3):
                for b in range(3):
                    op = np.kron(_PAULI[a], _PAULI[b]) + np.kron(_PAULI[b], _PAULI[a])
                    second[a, b] += np.trace(op @ pm).real / 4.0

    jperp2 = second[0, 0] + second[1, 1]
    jminus2 = complex(second[0, 0] - second[1, 1] - 2.0j * second[0, 1])
    return CollectiveMoments(first=first, second=second, jperp2_sum=float(jperp2), jminus2=jminus2)


_PROJ_E = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)


def _liouvillian(gamma: float, omega: float) -> np.ndarray:
    # row-major vec convention: vec(A rho B) = (A kron B^T) vec(rho)
    comm = np.kron(_PROJ_E, IDENTITY_2) - np.kron(IDENTITY_2, _PROJ_E.T)
    jump = (
        2.0 * np.kron(SIGMA_LOWER, SIGMA_LOWER.conj())
        - np.kron(_PROJ_E, IDENTITY_2)
        - np.kron(IDENTITY_2, _PROJ_E.T)
    )
    return -1j * omega * comm + gamma * jump


def master_equation_single(
    model: SpectralModel, traj: PropagatorTrajectory, rho0: np.ndarray
) -> np.ndarray:
    """Integrate the single-spin time-local master equation on the trajectory grid.

        drho/dt = -i Omega(t) [P_e, rho] + Gamma(t) (2 s rho s^dag - {P_e, rho})

    with P_e the excited projector and s the lowering operator. The stepper
    is the implicit trapezoid on the vectorized superoperator, using only
    the stored on-grid rate samples; this mirrors how the rates were
    extracted from the trajectory, so no off-grid rate interpolation enters.
    Integration halts at the last grid time with valid rates.

    Returns the stacked 2x2 density matrices, shape (n_valid, 2, 2).
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (2, 2):
        raise DomainError("rho0 must be 2x2")
    valid = traj.valid_rate
    n_valid = int(np.argmin(valid)) if not valid.all() else len(valid)
    if n_valid < 2:
        raise NumericsError("no valid rate samples to integrate")

    dt = traj.dt
    eye4 = np.eye(4, dtype=complex)
    out = np.empty((n_valid, 4), dtype=complex)
    out[0] = rho0.reshape(4)
    vec = out[0]
    l_here = _liouvillian(traj.gamma[0], traj.omega_shift[0])
    for k in range(n_valid - 1):
        l_next = _liouvillian(traj.gamma[k + 1], traj.omega_shift[k + 1])
        vec = np.linalg.solve(eye4 - 0.5 * dt * l_next, (eye4 + 0.5 * dt * l_here) @ vec)
        out[k + 1] = vec
        l_here = l_next
    return out.reshape(n_valid, 2, 2)


@lru_cache(maxsize=8)
def collective_operators_dense(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense Jx, Jy, Jz on the 2^n product space (test utility, n <= 10)."""
    if n > 10:
        raise CapacityError("dense collective operators capped at n = 10")
    dim = 2**n
    jx = np.zeros((dim, dim), dtype=complex)
    jy = np.zeros_like(jx)
    jz = np.zeros_like(jx)
    for site in range(n):
        for pauli, acc in ((SIGMA_X, jx), (SIGMA_Y, jy), (SIGMA_Z, jz)):
            op = np.array([[1.0]], dtype=complex)
            for k in range(n):
                op = np.kron(op, pauli if k == site else IDENTITY_2)
            acc += 0.5 * op
    for mat in (jx, jy, jz):
        mat.flags.writeable = False
    return jx, jy, jz
