"""Wineland squeezing parameter: exact evaluation from moments and closed forms.

Two denominator conventions are exposed. The 'paper' convention replaces
|<J>| by N/2, which is what the closed-form twist formulas assume; 'exact'
divides by the actual mean-spin length. Both are derived from the same
minimal transverse variance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collective import InitialMoments
from .errors import DomainError

CONVENTIONS = ("paper", "exact")


@dataclass(frozen=True)
class SqueezingReport:
    mean_spin: np.ndarray
    n0: np.ndarray
    min_transverse_var: float
    beta_opt: float
    xi2: float


def xi2_exact_from_moments(n: int, first, second) -> SqueezingReport:
    """Squeezing report from <J> and the symmetrized second-moment matrix.

    Builds an orthonormal transverse frame (n1, n2) perpendicular to the
    mean-spin direction, forms the 2x2 transverse covariance and takes its
    smaller eigenvalue; beta is the angle of that eigenvector in the (n1, n2)
    plane, folded into [0, pi).
    """
    first = np.asarray(first, dtype=float)
    second = np.asarray(second, dtype=float)
    norm = float(np.linalg.norm(first))
    if norm == 0.0:
        raise DomainError("mean spin vanishes; squeezing direction undefined")
    n0 = first / norm
    aux = np.zeros(3)
    aux[int(np.argmin(np.abs(n0)))] = 1.0
    n1 = np.cross(n0, aux)
    n1 /= np.linalg.norm(n1)
    n2 = np.cross(n0, n1)

    cov = second - np.outer(first, first)
    basis = np.stack([n1, n2])
    tcov = basis @ cov @ basis.T
    evals, evecs = np.linalg.eigh(tcov)
    min_var = float(evals[0])
    vec = evecs[:, 0]
    beta = float(np.arctan2(vec[1], vec[0])) % np.pi
    xi2 = n * min_var / norm**2
    return SqueezingReport(
        mean_spin=first, n0=n0, min_transverse_var=min_var, beta_opt=beta, xi2=float(xi2),
    )


def oat_ab(n: int, theta: float) -> tuple[float, float]:
    """The twist amplitudes A = 1 - cos^(N-2)(2 theta), B = 4 sin(theta) cos^(N-2)(theta)."""
    a = 1.0 - np.cos(2.0 * theta) ** (n - 2)
    b = 4.0 * np.sin(theta) * np.cos(theta) ** (n - 2)
    return float(a), float(b)


def oat_pair_correlators(n: int, theta: float) -> tuple[complex, complex]:
    """Closed-form pair correlators of the one-axis-twisted state.

    <s1 s2^dag> = A/8 and <s1 s2> = -(A + iB)/8 for the state generated by
    exp(-i theta Jx^2) with the standard ladder phase convention. (Flipping
    the twist sign conjugates the second correlator; only |<s1 s2>| enters
    the squeezing parameter.)
    """
    a, b = oat_ab(n, theta)
    return complex(a / 8.0), complex(-(a + 1j * b) / 8.0)


def xi2_oat_formula(n: int, theta: float, u_mod2: float) -> float:
    """Closed-form xi^2 for a damped one-axis-twisted state (paper convention)."""
    a, b = oat_ab(n, theta)
    return float(1.0 + u_mod2 * (n - 1.0) * (a - np.hypot(a, b)) / 4.0)


def xi2_oat_steady(n: int, theta: float, z_residue: float) -> float:
    """Steady-state xi^2: the closed form evaluated at |u|^2 = Z^2."""
    return xi2_oat_formula(n, theta, z_residue * z_residue)


def xi2_oat_steady_asymptote(n: int, z_residue: float) -> float:
    """Large-N/small-theta minimum of the steady state: 1.04 Z^2 N^(-2/3) + 1 - Z^2."""
    z2 = z_residue * z_residue
    return float(1.04 * z2 * n ** (-2.0 / 3.0) + 1.0 - z2)


def xi2_oat_steady_expansion(n: int, theta: float, z_residue: float) -> float:
    """Pre-minimum expansion 1 + Z^2 (N^-2 theta^-2 + N^2 theta^4 / 6 - 1)."""
    z2 = z_residue * z_residue
    return float(1.0 + z2 * (1.0 / (n * theta) ** 2 + n**2 * theta**4 / 6.0 - 1.0))


def theta_oat_optimal(n: int) -> float:
    """Asymptotic optimal twist 3^(1/6) N^(-2/3) for the one-axis model."""
    return float(3.0 ** (1.0 / 6.0) * n ** (-2.0 / 3.0))


def xi2_tat_formula(n: int, moments: InitialMoments, u_mod2: float) -> float:
    """xi^2 for a damped two-axis-twisted state (paper convention):

    1 - |u|^2 + (2 |u|^2 / N) (<Jx^2 + Jy^2>_0 - |<J_-^2>_0|).
    """
    return float(
        1.0 - u_mod2 + (2.0 * u_mod2 / n) * (moments.jperp2_sum - abs(moments.jminus2))
    )


def xi2_tat_steady(n: int, moments: InitialMoments, z_residue: float) -> float:
    """Steady-state xi^2 for the two-axis model: formula at |u|^2 = Z^2."""
    return xi2_tat_formula(n, moments, z_residue * z_residue)


def mean_spin_oat(n: int, theta: float, u_mod2: float) -> np.ndarray:
    """Mean spin of the damped one-axis-twisted state: z-aligned,
    (N/2) [|u|^2 (1 - cos^(2j-1) theta) - 1]."""
    c = np.cos(theta) ** (n - 1)
    return np.array([0.0, 0.0, 0.5 * n * (u_mod2 * (1.0 - c) - 1.0)])


def mean_spin_evolved(n: int, sigma_z0: float, u_mod2: float) -> np.ndarray:
    """Mean spin of any damped permutation-symmetric state with <s1>_0 = 0:
    z-aligned, (N/2) [|u|^2 (sigma_z0 + 1) - 1]."""
    return np.array([0.0, 0.0, 0.5 * n * (u_mod2 * (sigma_z0 + 1.0) - 1.0)])


def xi2_oat(n: int, theta: float, u_mod2: float, convention: str = "paper") -> float:
    """One-axis xi^2 in the chosen denominator convention."""
    xi2_paper = xi2_oat_formula(n, theta, u_mod2)
    if convention == "paper":
        return xi2_paper
    if convention == "exact":
        mean = mean_spin_oat(n, theta, u_mod2)
        # min transverse variance is (N/4) * xi2_paper by the closed form
        return float(n * (n / 4.0) * xi2_paper / np.dot(mean, mean))
    raise DomainError(f"unknown convention {convention!r}")


def xi2_tat(n: int, moments: InitialMoments, u_mod2: float, convention: str = "paper") -> float:
    """Two-axis xi^2 in the chosen denominator convention."""
    xi2_paper = xi2_tat_formula(n, moments, u_mod2)
    if convention == "paper":
        return xi2_paper
    if convention == "exact":
        mean = mean_spin_evolved(n, moments.sigma_z_single, u_mod2)
        return float(n * (n / 4.0) * xi2_paper / np.dot(mean, mean))
    raise DomainError(f"unknown convention {convention!r}")
