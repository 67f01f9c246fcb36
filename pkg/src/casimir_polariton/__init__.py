"""Casimir interaction and TE surface polaritons of two gapped graphene layers.

All quantities are dimensionless in the gap wavelength ``lambda_D = hbar c / 2 Delta``:
``lam = L / lambda_D`` for separations, ``K = k lambda_D`` and
``Omega = omega lambda_D / c`` for wavevectors and frequencies.
"""

from .errors import (
    BracketInvalid,
    CasimirError,
    DomainError,
    NoConvergence,
    PoleProximityWarning,
)
from .lifshitz import (
    EnergyResult,
    Reference,
    e_perf,
    energy_per_area,
    eta,
    eta_long_asymptote,
    eta_short_limit,
    eta_small_alpha,
)
from .numerics import QuadratureConfig, Transform
from .polariton import (
    Branch,
    Curve,
    DispersionPoint,
    k_lightcone,
    omega_coupled,
    omega_single,
    pair_creation_threshold,
    sample_curve,
)
from .polenergy import (
    compute_C,
    e_norm_per_area,
    epol,
    epol_long_asymptote,
    epol_short_limit,
    find_crossover,
)
from .specfun import FIGURE_PARAMS, ModelParams, f_pm, phi, psi, psi_complex, psi_inv

__version__ = "0.1.0"
