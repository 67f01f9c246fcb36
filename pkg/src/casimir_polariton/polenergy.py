"""Polaritonic part of the Casimir energy.

In units of ``E_N = hbar c A / (4 pi lambda_D^3)``

    E_pol / E_N = Int_0^inf [Omega_+(mu, lam) + Omega_-(mu, lam) - 2 Omega_0(mu)] mu dmu.

The light-cone continuation of the antisymmetric mode sits at ``mu = 0`` and
carries no weight in this integral.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .lifshitz import HBAR_C, EnergyResult, Reference
from .numerics import (
    QuadratureConfig,
    Transform,
    integrate_semi_infinite,
    maximize_1d,
)
from .polariton import omega_coupled, omega_single
from .specfun import ModelParams, psi_inv

__all__ = [
    "SHORT_SCALING_BELOW",
    "LONG_SCALING_ABOVE",
    "epol_integrand",
    "epol",
    "epol_short_limit",
    "compute_C",
    "epol_long_asymptote",
    "find_crossover",
    "e_norm_per_area",
]

# below/above these separations the integration variable is rescaled so that
# the support of the integrand stays at O(1)
SHORT_SCALING_BELOW = 1e-2
LONG_SCALING_ABOVE = 1e2


def epol_integrand(mu: float, lam: float, params: ModelParams) -> float:
    """``[Omega_+ + Omega_- - 2 Omega_0] mu`` from the dispersion module."""
    if mu == 0:
        return 0.0
    plus = omega_coupled(mu, lam, 1, params).omega
    minus = omega_coupled(mu, lam, -1, params).omega
    single = omega_single(mu, params).omega
    return (plus + minus - 2.0 * single) * mu


def _integration_scale(lam: float, params: ModelParams) -> float:
    if lam < SHORT_SCALING_BELOW:
        return params.alpha
    if lam > LONG_SCALING_ABOVE:
        return 1.0 / lam
    return 1.0


def epol(lam: float, params: ModelParams | None = None, cfg: QuadratureConfig | None = None) -> EnergyResult:
    """``E_pol / E_N`` at separation ``lam = L / lambda_D``."""
    params = params or ModelParams()
    cfg = cfg or QuadratureConfig()
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    if params.alpha == 0:
        return EnergyResult(0.0, Reference.POLARITON_NORM, 0.0, lam, params)
    est = integrate_semi_infinite(
        lambda mu: epol_integrand(mu, lam, params),
        cfg,
        scale=_integration_scale(lam, params),
    )
    return EnergyResult(
        value=est.value,
        reference=Reference.POLARITON_NORM,
        error_estimate=est.error_estimate,
        lam=lam,
        params=params,
        converged=est.converged,
        evaluations=est.evaluations,
    )


def epol_short_limit(params: ModelParams | None = None, cfg: QuadratureConfig | None = None) -> float:
    """Limit of ``E_pol / E_N`` for ``lam -> 0``.

    There ``f_+ -> inf`` (the + mode sits at the pair-creation threshold,
    ``p = 1``) and ``f_- -> 1/2``, and with ``x = mu / alpha`` the energy
    becomes a distance-independent integral scaling as ``alpha^2``.
    """
    params = params or ModelParams()
    cfg = cfg or QuadratureConfig()
    a, v = params.alpha, params.v
    s = 1.0 - v * v

    def bracket(x):
        w = (a * v * x) ** 2
        return x * (
            math.sqrt((w + 1.0) / s)
            + math.sqrt((w + psi_inv(0.5 * x) ** 2) / s)
            - 2.0 * math.sqrt((w + psi_inv(x) ** 2) / s)
        )

    return a * a * integrate_semi_infinite(bracket, cfg).value


def _c_bracket(x: float) -> float:
    # sqrt(f) - 1 = (f - 1) / (sqrt(f) + 1) keeps the exp(-2x) tail accurate
    fp1 = 1.0 / math.expm1(x)  # f_+ - 1
    fm1 = -1.0 / (math.exp(x) + 1.0)  # f_- - 1
    return fp1 / (math.sqrt(1.0 + fp1) + 1.0) + fm1 / (math.sqrt(1.0 + fm1) + 1.0)


def compute_C(cfg: QuadratureConfig | None = None) -> float:
    """``Int_0^inf x^(3/2) [sqrt(f_-(x)) + sqrt(f_+(x)) - 2] dx``.

    ``f_-(x) = (1 + tanh(x/2)) / 2`` and ``f_+(x) = (1 + coth(x/2)) / 2``.
    The coth term behaves as ``x^(-1/2)`` at the origin, which the open
    quadrature rule absorbs.
    """
    cfg = cfg or QuadratureConfig(rel_tol=1e-12)

    def integrand(x):
        if x == 0 or x > 700.0:
            return 0.0
        return x ** 1.5 * _c_bracket(x)

    return integrate_semi_infinite(integrand, cfg.with_transform(Transform.EXP)).value


def epol_long_asymptote(lam: float, params: ModelParams | None = None, C: float | None = None) -> float:
    """``sqrt(3 / (4 alpha (1 - v^2))) C / lam^(5/2)`` for ``lam >> 1``."""
    params = params or ModelParams()
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    C = compute_C() if C is None else C
    return math.sqrt(3.0 / (4.0 * params.alpha * (1.0 - params.v ** 2))) * C / lam ** 2.5


def find_crossover(
    params: ModelParams | None = None,
    cfg: QuadratureConfig | None = None,
    tol: float = 1e-4,
) -> tuple[float, float]:
    """Separation where ``E_pol`` is maximal and the polaritonic force flips sign.

    A coarse logarithmic scan brackets the maximum, which is then refined
    with a derivative-free search in ``log(lam)``.
    """
    params = params or ModelParams()
    cfg = cfg or QuadratureConfig()
    grid = np.geomspace(1e-1, 1e5, 49)
    values = np.array([epol(lam, params, cfg).value for lam in grid])
    i = int(np.argmax(values))
    if i == 0 or i == len(grid) - 1 or values[i] <= 0:
        raise DomainError("no interior positive maximum found on the scan grid")

    def f(t):
        return epol(math.exp(t), params, cfg).value

    t_max, e_max = maximize_1d(f, math.log(grid[i - 1]), math.log(grid[i + 1]), tol=tol / 10)
    return math.exp(t_max), e_max


def e_norm_per_area(lambda_delta_m: float) -> float:
    """``E_N / A = hbar c / (4 pi lambda_D^3)`` in J/m^2."""
    if not lambda_delta_m > 0:
        raise DomainError("lambda_delta_m must be positive")
    return HBAR_C / (4.0 * math.pi * lambda_delta_m ** 3)
