"""Non-Markovian spin-squeezing simulator.

Exact single-spin propagator dynamics in a structured vacuum environment,
bound-state spectral analysis, collective-spin twisting, Wineland squeezing
parameters, and Husimi phase-space maps, with a CLI for CSV emission.
"""

from .channel_oracle import DensityMatrix, KrausPair
from .collective import (
    CollectiveState,
    DickeOperators,
    InitialMoments,
    dicke_operators,
    initial_moments,
    oat_state,
    optimize_theta,
    tat_state,
)
from .errors import CapacityError, ConfigError, DomainError, NumericsError
from .husimi import HusimiGrid, husimi_q, symmetric_power_expectation, transverse_anisotropy
from .propagator import PropagatorTrajectory, solve_volterra, u_bma
from .spectral import (
    SpectralModel,
    correlation_f,
    density_j,
    eta_critical,
    lamb_shift_delta,
    markov_kappa,
)
from .spectrum import (
    BoundStateReport,
    branch_cut_density,
    continuum_weight,
    find_bound_state,
    u_asymptotic,
    u_spectral,
    u_spectral_grid,
    y_of_e,
)
from .squeezing import (
    SqueezingReport,
    mean_spin_oat,
    xi2_exact_from_moments,
    xi2_oat,
    xi2_oat_formula,
    xi2_oat_steady,
    xi2_oat_steady_asymptote,
    xi2_tat,
    xi2_tat_formula,
    xi2_tat_steady,
)

__all__ = [
    "BoundStateReport",
    "CapacityError",
    "CollectiveState",
    "ConfigError",
    "DensityMatrix",
    "DickeOperators",
    "DomainError",
    "HusimiGrid",
    "InitialMoments",
    "KrausPair",
    "NumericsError",
    "PropagatorTrajectory",
    "SpectralModel",
    "SqueezingReport",
    "branch_cut_density",
    "continuum_weight",
    "correlation_f",
    "density_j",
    "dicke_operators",
    "eta_critical",
    "find_bound_state",
    "husimi_q",
    "initial_moments",
    "lamb_shift_delta",
    "markov_kappa",
    "mean_spin_oat",
    "oat_state",
    "optimize_theta",
    "solve_volterra",
    "symmetric_power_expectation",
    "tat_state",
    "transverse_anisotropy",
    "u_asymptotic",
    "u_bma",
    "u_spectral",
    "u_spectral_grid",
    "xi2_exact_from_moments",
    "xi2_oat",
    "xi2_oat_formula",
    "xi2_oat_steady",
    "xi2_oat_steady_asymptote",
    "xi2_tat",
    "xi2_tat_formula",
    "xi2_tat_steady",
    "y_of_e",
]

__version__ = "0.1.0"
