"""Polarization-tensor entries and reflection coefficients of one layer.

Real-frequency quantities are written in the gap-scaled variables
``Omega = omega lambda_D / c``, ``K = k lambda_D``, ``mu = sqrt(K^2 - Omega^2)``
and ``p = sqrt(Omega^2 - v^2 K^2)``.  The tensor entries are returned in
units of ``alpha / lambda_D`` (see :data:`PI_UNIT`), so no length scale ever
enters a floating-point value.

Only the evanescent sector below the pair-creation threshold
(``mu >= 0``, ``0 < p < 1``) is covered on the real axis; the imaginary axis
is handled by :func:`r_imag` in the Lifshitz scaling of the two-layer
problem.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import mpmath

from .errors import DomainError, PoleProximityWarning
from .specfun import ModelParams, phi, psi, psi_of_rapidity

__all__ = [
    "PI_UNIT",
    "POLE_TOL",
    "EvanescentPoint",
    "ImaginaryAxisPoint",
    "pi_00",
    "pi_tr",
    "r_general",
    "r_t0",
    "r_imag",
    "r_imag_pair",
]

PI_UNIT = "alpha/lambda_delta"
POLE_TOL = 1e-14
_POLARIZATIONS = ("TM", "TE")


def _check_pol(pol: str) -> str:
    pol = pol.upper()
    if pol not in _POLARIZATIONS:
        raise ValueError(f"polarization must be 'TM' or 'TE', got {pol!r}")
    return pol


@dataclass(frozen=True)
class EvanescentPoint:
    """A point ``(Omega, K)`` of the evanescent sector.

    `rapidity` optionally carries ``2 artanh(p)`` exactly; points produced by
    the dispersion solvers set it, which keeps psi finite and accurate even
    when ``p`` has rounded to within an ulp of 1.
    """

    omega: float
    k: float
    mu: float
    p: float
    rapidity: Optional[float] = None

    @classmethod
    def from_mu_p(cls, mu: float, p: float, v: float, rapidity: Optional[float] = None):
        if not mu >= 0:
            raise DomainError(f"mu must be nonnegative, got {mu}")
        if not 0 <= p < 1:
            raise DomainError(f"p must lie in [0, 1), got {p}")
        s = 1.0 - v * v
        k = math.sqrt((mu * mu + p * p) / s)
        omega = math.sqrt((v * v * mu * mu + p * p) / s)
        return cls(omega, k, mu, p, rapidity)

    @classmethod
    def from_omega_k(cls, omega: float, k: float, v: float):
        mu2 = k * k - omega * omega
        p2 = omega * omega - v * v * k * k
        if mu2 < 0:
            raise DomainError("point lies above the light cone (propagating sector)")
        if not 0 <= p2 < 1:
            raise DomainError("point lies outside 0 <= p < 1")
        return cls(omega, k, math.sqrt(mu2), math.sqrt(p2))

    def psi(self) -> float:
        if self.rapidity is not None:
            return psi_of_rapidity(self.rapidity)
        return psi(self.p)


@dataclass(frozen=True)
class ImaginaryAxisPoint:
    """Scaled imaginary frequency and wavevector ``(xi~, k~)``."""

    xi: float
    k: float
    kappa: float
    rho: float

    @classmethod
    def from_xi_k(cls, xi: float, k: float, v: float):
        if xi < 0 or k < 0:
            raise DomainError("xi and k must be nonnegative")
        return cls(xi, k, math.hypot(k, xi), math.hypot(xi, v * k))


def _require_below_threshold(point: EvanescentPoint):
    if not 0 < point.p < 1:
        raise DomainError(f"need 0 < p < 1, got p={point.p}")


def pi_00(point: EvanescentPoint, params: ModelParams) -> float:
    """``Pi_00`` in units of :data:`PI_UNIT`: ``2 K^2 psi(p) / p^2``."""
    _require_below_threshold(point)
    return 2.0 * point.k ** 2 * point.psi() / point.p ** 2


def pi_tr(point: EvanescentPoint, params: ModelParams) -> float:
    """Trace of the polarization tensor in units of :data:`PI_UNIT`."""
    _require_below_threshold(point)
    return 2.0 * (point.mu ** 2 - point.p ** 2) * point.psi() / point.p ** 2


def r_general(point: EvanescentPoint, params: ModelParams, pol: str) -> float:
    """Reflection coefficient from the general polarization-tensor form.

    The TE numerator ``K^2 Pi_tr - mu^2 Pi_00`` cancels to ``-2 alpha K^2 psi``
    and loses ``log10(mu^2/p^2)`` digits in double precision, so the algebra
    is carried out with 40 significant digits.  The overall sign of the TE
    expression follows the convention in which the coefficient is negative
    on the imaginary axis.
    """
    pol = _check_pol(pol)
    _require_below_threshold(point)
    with mpmath.workdps(40):
        a = mpmath.mpf(params.alpha)
        psi_val = mpmath.mpf(point.psi())
        k2 = mpmath.mpf(point.k) ** 2
        mu = mpmath.mpf(point.mu)
        p2 = mpmath.mpf(point.p) ** 2
        p00 = a * 2 * k2 * psi_val / p2
        ptr = a * 2 * (mu * mu - p2) * psi_val / p2
        if pol == "TM":
            num = mu * p00
            den = mu * p00 + 2 * k2
        else:
            num = -(k2 * ptr - mu * mu * p00)
            den = k2 * (ptr + 2 * mu) - mu * mu * p00
        if den == 0:
            return 0.0 if num == 0 else math.copysign(math.inf, float(num))
        return float(num / den)


def r_t0(point: EvanescentPoint, params: ModelParams, pol: str) -> float:
    """Zero-temperature reflection coefficient of an undoped layer.

    ``r_TM = a mu psi / (a mu psi + p^2)`` and ``r_TE = -a psi / (a psi - mu)``
    with ``a = alpha``.  `r_TE` diverges on the TE polariton line
    ``alpha psi(p) = mu``; evaluating within :data:`POLE_TOL` of it emits a
    :class:`PoleProximityWarning` instead of raising.
    """
    pol = _check_pol(pol)
    if not point.mu >= 0:
        raise DomainError(f"mu must be nonnegative, got {point.mu}")
    _require_below_threshold(point)
    a_psi = params.alpha * point.psi()
    if pol == "TM":
        num = a_psi * point.mu
        return num / (num + point.p ** 2)
    den = a_psi - point.mu
    if abs(den) < POLE_TOL:
        warnings.warn(
            f"r_TE evaluated {abs(den):.1e} from its pole", PoleProximityWarning, stacklevel=2
        )
    if den == 0:
        return 0.0 if a_psi == 0 else -math.inf
    return -a_psi / den


def _phi_over_x2(x: float) -> float:
    if x == 0:
        return 4.0 / 3.0
    return phi(x) / (x * x)


def r_imag_pair(kappa: float, rho: float, lam: float, alpha: float) -> tuple[float, float]:
    """``(r_TE, r_TM)`` on the imaginary axis from scaled ``kappa~, rho~``."""
    x = rho / (2.0 * lam)
    # 2 lam alpha phi(x) = (alpha rho^2 / (2 lam)) * phi(x)/x^2, finite at rho -> 0
    b = alpha / (2.0 * lam) * _phi_over_x2(x)
    te = b * rho * rho
    tm = b * kappa
    return -te / (kappa + te), tm / (tm + 1.0)


def r_imag(point: ImaginaryAxisPoint, lam: float, params: ModelParams, pol: str) -> float:
    """Reflection coefficient at imaginary frequency in the two-layer scaling.

    The scaled variables are ``xi~ = 2 lam xi lambda_D / c`` and
    ``k~ = 2 lam k lambda_D`` with ``lam = L / lambda_D``.
    """
    pol = _check_pol(pol)
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    if point.kappa == 0:
        return 0.0
    te, tm = r_imag_pair(point.kappa, point.rho, lam, params.alpha)
    return tm if pol == "TM" else te

