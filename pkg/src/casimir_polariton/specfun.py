"""Scalar special functions of the T=0 Dirac-model polarization tensor.

The central function is

    psi(p) = (p + 1/p) * artanh(p) - 1,        0 < p < 1,

together with its value on the imaginary axis ``phi(x) = -psi(i x)`` and
its inverse.  Writing ``p = tanh(u / 2)`` turns psi into
``u * coth(u) - 1``; the "rapidity" ``u`` stays finite and well resolved
right up to the pair-creation threshold ``p -> 1``, where ``p`` itself
saturates in double precision.  The inverse is therefore computed in ``u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .numerics import find_root_monotone

__all__ = [
    "ModelParams",
    "DEFAULT_PARAMS",
    "FIGURE_PARAMS",
    "psi",
    "psi_of_rapidity",
    "psi_complex",
    "phi",
    "rapidity",
    "rapidity_inv",
    "psi_inv",
    "f_pm",
    "f_plus",
    "f_minus",
]

P_MAX = math.nextafter(1.0, 0.0)

# Taylor coefficients 4m / (4m^2 - 1) of psi(p) in p^(2m), m = 1..6
_SERIES = tuple(4.0 * m / (4.0 * m * m - 1.0) for m in range(1, 7))
_SERIES_CUTOFF = 1e-2


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs of the two-layer graphene model.

    Attributes
    ----------
    alpha : float
        Fine-structure constant.
    v : float
        Fermi velocity in units of the speed of light.
    lambda_delta_m : float, optional
        Gap wavelength ``hbar c / (2 Delta)`` in meters.  Only needed for
        dimensional output.
    lambda_min_ratio : float
        Separation (in units of the gap wavelength) below which the Dirac
        model is no longer trusted.
    """

    alpha: float = 1.0 / 137.0
    v: float = 1.0 / 300.0
    lambda_delta_m: Optional[float] = None
    lambda_min_ratio: float = 2e-3

    def __post_init__(self):
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")
        if not 0 <= self.v < 1:
            raise ValueError(f"v must lie in [0, 1), got {self.v}")
        if self.lambda_delta_m is not None and not self.lambda_delta_m > 0:
            raise ValueError("lambda_delta_m must be positive when given")
        if not self.lambda_min_ratio > 0:
            raise ValueError("lambda_min_ratio must be positive")

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "v": self.v,
            "lambda_delta_m": self.lambda_delta_m,
            "lambda_min_ratio": self.lambda_min_ratio,
        }


DEFAULT_PARAMS = ModelParams()
# exaggerated couplings used to make the dispersion curves legible
FIGURE_PARAMS = ModelParams(alpha=0.5, v=0.5)


def _even_series(z2: float, sign: float = 1.0) -> float:
    # sum_m c_m (sign * z2)^m, Horner form
    w = sign * z2
    acc = 0.0
    for c in reversed(_SERIES):
        acc = acc * w + c
    return acc * w


def psi(p: float) -> float:
    """``(p + 1/p) artanh(p) - 1`` for ``0 < p < 1``."""
    if not 0 < p < 1:
        raise DomainError(f"psi needs 0 < p < 1, got {p}")
    if p < _SERIES_CUTOFF:
        return _even_series(p * p)
    artanh = 0.5 * (math.log1p(p) - math.log1p(-p))
    return (p + 1.0 / p) * artanh - 1.0


def psi_of_rapidity(u: float) -> float:
    """psi expressed through ``u = 2 artanh(p)``: ``u coth(u) - 1``."""
    if not u >= 0:
        raise DomainError(f"rapidity must be nonnegative, got {u}")
    if u == math.inf:
        return math.inf
    if u < 2 * _SERIES_CUTOFF:
        # u coth u - 1 = u^2/3 - u^4/45 + 2 u^6/945 - u^8/4725
        u2 = u * u
        return u2 * (1.0 / 3.0 - u2 * (1.0 / 45.0 - u2 * (2.0 / 945.0 - u2 / 4725.0)))
    return u / math.tanh(u) - 1.0


def rapidity(p: float) -> float:
    """``2 artanh(p)``, computed as ``log1p(p) - log1p(-p)``."""
    if not 0 <= p < 1:
        raise DomainError(f"rapidity needs 0 <= p < 1, got {p}")
    return math.log1p(p) - math.log1p(-p)


def psi_complex(p: float) -> complex:
    """Continuation of psi above the pair-creation threshold, ``p > 1``.

    artanh is continued as ``ln((p+1)/(p-1))/2 + i pi/2`` so that
    ``Im psi > 0`` and ``psi -> i pi p / 2`` for ``p >> 1``.
    """
    if not p > 1:
        raise DomainError(f"psi_complex needs p > 1, got {p}")
    artanh = complex(0.5 * (math.log1p(p) - math.log(p - 1.0)), 0.5 * math.pi)
    return (p + 1.0 / p) * artanh - 1.0


def phi(x: float) -> float:
    """``-psi(i x) = 1 + (x - 1/x) arctan(x)`` for ``x >= 0``."""
    if not x >= 0:
        raise DomainError(f"phi needs x >= 0, got {x}")
    if x < _SERIES_CUTOFF:
        return -_even_series(x * x, sign=-1.0)
    if x == math.inf:
        return math.inf
    return 1.0 + (x - 1.0 / x) * math.atan(x)


def rapidity_inv(y: float) -> float:
    """The rapidity ``u >= 0`` with ``u coth(u) - 1 = y``."""
    if not y >= 0:
        raise DomainError(f"psi_inv needs y >= 0, got {y}")
    if y == 0:
        return 0.0
    if y == math.inf:
        return math.inf
    # small-u and large-u asymptotes of u coth u - 1 seed a tight bracket
    seed = math.sqrt(3.0 * y) if y < 1.0 else y + 1.0
    lo, hi = 0.5 * seed, 2.0 * seed

    def g(u):
        return psi_of_rapidity(u) - y

    if g(lo) > 0:
        lo = 0.0
    if g(hi) < 0:
        hi = 2.0 * y + 2.0
    # brentq adds a relative tolerance of 4 eps on top of this absolute one
    return find_root_monotone(g, lo, hi, tol=1e-300)


def psi_inv(y: float) -> float:
    """The unique ``p`` in ``[0, 1)`` with ``psi(p) = y``.

    Values of `y` above roughly 37 put ``p`` within one ulp of 1; the
    returned value is capped at the largest double below 1.  Use
    :func:`rapidity_inv` when the distance to the threshold matters.
    """
    u = rapidity_inv(y)
    return min(math.tanh(0.5 * u), P_MAX)


def f_plus(x: float) -> float:
    """``1 / (1 - exp(-x))``, pole at ``x = 0``."""
    if not x > 0:
        raise DomainError(f"f_plus needs x > 0, got {x}")
    return -1.0 / math.expm1(-x)


def f_minus(x: float) -> float:
    """``1 / (1 + exp(-x))``."""
    if not x >= 0:
        raise DomainError(f"f_minus needs x >= 0, got {x}")
    return 1.0 / (1.0 + math.exp(-x))


def f_pm(x: float, sign: int) -> float:
    """Coupling functions ``(1 -/+ exp(-x))^-1``; `sign` is +1 or -1."""
    if sign == 1:
        return f_plus(x)
    if sign == -1:
        return f_minus(x)
    raise ValueError(f"sign must be +1 or -1, got {sign}")

