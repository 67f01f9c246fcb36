"""Total zero-temperature Casimir energy between two graphene layers.

The energy is reported through the correction factor
``eta = E / E_perf`` with respect to two perfect mirrors.  In the scaled
variables ``xi~ = 2 L xi / c`` and ``k~ = 2 L k``

    eta = -(45 / 2 pi^4) Int dxi~ Int dk~ k~ sum_s ln(1 - r_s^2 exp(-kappa~)),

which is evaluated in polar coordinates ``xi~ = h x``, ``k~ = h sqrt(1-x^2)``
(``x`` the sine of the polar angle), so that the measure becomes
``h^2 dh dx`` and the radial decay is the plain ``exp(-h)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from scipy import constants

from .errors import DomainError
from .numerics import (
    QuadratureConfig,
    Transform,
    integrate_finite,
    integrate_semi_infinite,
)
from .reflection import r_imag_pair
from .specfun import ModelParams

__all__ = [
    "HBAR_C",
    "Reference",
    "EnergyResult",
    "ShortDistanceLimit",
    "e_perf",
    "eta",
    "eta_short_limit",
    "eta_small_alpha",
    "eta_long_asymptote",
    "energy_per_area",
]

HBAR_C = constants.hbar * constants.c
ETA_PREFACTOR = 45.0 / (2.0 * math.pi ** 4)


class Reference(enum.Enum):
    PERFECT_MIRROR = "perfect_mirror"
    POLARITON_NORM = "polariton_norm"


@dataclass(frozen=True)
class EnergyResult:
    """A dimensionless energy ratio with its quadrature error.

    `reliable` is False when ``lam`` lies below the Dirac-model validity
    marker ``params.lambda_min_ratio``; the value is still computed.
    """

    value: float
    reference: Reference
    error_estimate: float
    lam: float
    params: ModelParams
    converged: bool = True
    evaluations: int = 0

    @property
    def reliable(self) -> bool:
        return self.lam >= self.params.lambda_min_ratio

    def __float__(self):
        return float(self.value)


class ShortDistanceLimit(NamedTuple):
    eta: float
    g_te: float
    g_tm: float

    @property
    def tm_share(self) -> float:
        return self.g_tm / (self.g_te + self.g_tm)


def e_perf(L: float, A: float) -> float:
    """Perfect-mirror Casimir energy ``-hbar c pi^2 A / (720 L^3)`` in joules.

    `L` in meters, `A` in square meters.
    """
    if not (L > 0 and A > 0):
        raise DomainError(f"need L > 0 and A > 0, got L={L}, A={A}")
    return -HBAR_C * math.pi ** 2 * A / (720.0 * L ** 3)


def _angular_breakpoints(h: float, lam: float, params: ModelParams) -> list[float]:
    # TM reflectivity changes scale where sqrt(x^2 + v^2) ~ alpha pi / 2; the
    # gap switches phi from linear to quadratic where rho~ = h s(x) ~ 2 lam
    a = params.alpha * math.pi / 2
    pts = {params.v, a, params.v + a, 2.0 * lam / h}
    return sorted(p for p in pts if 0 < p < 1)


def _log_terms(h: float, x: float, lam: float, params: ModelParams) -> float:
    c2 = 1.0 - x * x
    xi2 = (h * x) ** 2
    rho = math.sqrt(xi2 + params.v ** 2 * h * h * c2)
    te, tm = r_imag_pair(h, rho, lam, params.alpha)
    e = math.exp(-h)
    return math.log1p(-te * te * e) + math.log1p(-tm * tm * e)


def eta(
    lam: float, params: ModelParams | None = None, cfg: QuadratureConfig | None = None
) -> EnergyResult:
    """Correction factor ``E / E_perf`` at separation ``lam = L / lambda_D``.

    Nested adaptive quadrature: the angular integral (inner, tolerance ten
    times tighter) is done on ``x in (0, 1)`` for every radial node ``h``
    of the outer semi-infinite integral, which uses the exponential map.
    """
    params = params or ModelParams()
    cfg = cfg or QuadratureConfig()
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    if params.alpha == 0:
        return EnergyResult(0.0, Reference.PERFECT_MIRROR, 0.0, lam, params)

    inner_cfg = cfg.tightened(10.0)
    status = {"ok": True, "evals": 0}

    def radial(h: float) -> float:
        if h == 0 or h > 745.0:
            return 0.0
        est = integrate_finite(
            lambda x: _log_terms(h, x, lam, params),
            0.0, 1.0, inner_cfg, _angular_breakpoints(h, lam, params),
        )
        status["ok"] &= est.converged or abs(est.value) * h * h < cfg.abs_tol
        status["evals"] += est.evaluations
        return h * h * est.value

    outer = integrate_semi_infinite(radial, cfg.with_transform(Transform.EXP))
    value = -ETA_PREFACTOR * outer.value
    return EnergyResult(
        value=value,
        reference=Reference.PERFECT_MIRROR,
        error_estimate=ETA_PREFACTOR * outer.error_estimate,
        lam=lam,
        params=params,
        converged=outer.converged and status["ok"],
        evaluations=status["evals"],
    )


def eta_short_limit(
    params: ModelParams | None = None, cfg: QuadratureConfig | None = None
) -> ShortDistanceLimit:
    """Plateau of eta for ``lam -> 0`` from the leading-order g integrals.

    ``eta(0) ~ (45/pi^4) (g_TE + g_TM)`` with
    ``g_TE = Int_0^1 (a s / (1 + a s))^2 dx``,
    ``g_TM = Int_0^1 (1 / (1 + s / a))^2 dx``,
    ``a = alpha pi / 2`` and ``s = sqrt(x^2 (1 - v^2) + v^2)``.
    """
    params = params or ModelParams()
    cfg = cfg or QuadratureConfig()
    a = params.alpha * math.pi / 2
    v2 = params.v ** 2
    if a == 0:
        return ShortDistanceLimit(0.0, 0.0, 0.0)

    def s(x):
        return math.sqrt(x * x * (1.0 - v2) + v2)

    pts = [p for p in (params.v, a) if 0 < p < 1]
    g_te = integrate_finite(lambda x: (a * s(x) / (1.0 + a * s(x))) ** 2, 0.0, 1.0, cfg, pts).value
    g_tm = integrate_finite(lambda x: (a / (a + s(x))) ** 2, 0.0, 1.0, cfg, pts).value
    return ShortDistanceLimit(45.0 / math.pi ** 4 * (g_te + g_tm), g_te, g_tm)


def eta_small_alpha(params: ModelParams | None = None) -> float:
    """Leading small-alpha term of the short-distance plateau.

    For ``v -> 1`` the ratio ``arctan(w) / sqrt(v^2 (1 - v^2))`` with
    ``w = sqrt(1 - v^2) / v`` tends to ``1 / v^2``; it is evaluated through
    ``arctan(w) / w`` to stay finite there.
    """
    params = params or ModelParams()
    a, v = params.alpha, params.v
    v2 = v * v
    if v == 0:
        raise DomainError("the small-alpha expansion diverges for v = 0")
    w = math.sqrt(1.0 - v2) / v
    atan_ratio = math.atan(w) / w if w > 1e-8 else 1.0 - w * w / 3.0
    bracket = (2.0 * v2 + 1.0) / 3.0 + atan_ratio / v2
    return 45.0 / (4.0 * math.pi ** 2) * a * a * bracket


def eta_long_asymptote(lam: float, params: ModelParams | None = None) -> float:
    """``(240 alpha^2 / pi^4 lam^2) [1 + (3 + 4 v^2 + 3 v^4) / 15]`` for ``lam >> 1``."""
    params = params or ModelParams()
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    v2 = params.v ** 2
    return 240.0 * params.alpha ** 2 / (math.pi ** 4 * lam ** 2) * (
        1.0 + (3.0 + 4.0 * v2 + 3.0 * v2 * v2) / 15.0
    )


def energy_per_area(eta_value: float, lam: float, lambda_delta_m: float) -> float:
    """Dimensional energy per area ``eta * E_perf / A`` in J/m^2."""
    L = lam * lambda_delta_m
    return eta_value * e_perf(L, 1.0)
