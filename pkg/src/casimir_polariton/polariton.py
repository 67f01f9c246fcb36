"""TE surface-polariton dispersion relations.

Every branch is a parametric curve in ``mu = sqrt(K^2 - Omega^2)``:

    p(mu)     = psi_inv(y(mu))
    Omega(mu) = sqrt((v^2 mu^2 + p^2) / (1 - v^2))
    K(mu)     = sqrt((mu^2 + p^2) / (1 - v^2))

with ``y = mu / alpha`` for an isolated layer and
``y = (mu / alpha) f_pm(mu lam)`` for the symmetric (-) and antisymmetric (+)
modes of two layers a distance ``lam`` apart.  No root finding in the
``(Omega, K)`` plane is needed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError
from .numerics import find_root_monotone
from .reflection import EvanescentPoint
from .specfun import P_MAX, ModelParams, psi_inv, rapidity_inv

__all__ = [
    "Branch",
    "DispersionPoint",
    "Curve",
    "omega_single",
    "omega_coupled",
    "omega_branch",
    "k_lightcone",
    "pair_creation_threshold",
    "sample_curve",
]


class Branch(enum.Enum):
    SINGLE = "single"
    MINUS = "minus"  # symmetric coupled mode
    PLUS = "plus"  # antisymmetric coupled mode
    LIGHTCONE = "lightcone"  # continuation of PLUS along Omega = K


@dataclass(frozen=True)
class DispersionPoint:
    mu: float
    omega: float
    k: float
    p: float
    branch: Branch
    rapidity: Optional[float] = None

    @property
    def threshold_gap(self) -> float:
        """``Omega_pc(K)^2 - Omega^2 = 1 - p^2``, exact even when ``p`` rounds to 1."""
        if self.rapidity is None:
            return 1.0 - self.p * self.p
        e = math.exp(-self.rapidity)
        return 4.0 * e / (1.0 + e) ** 2

    def evanescent(self) -> EvanescentPoint:
        """The point as input for the reflection coefficients."""
        return EvanescentPoint(self.omega, self.k, self.mu, self.p, self.rapidity)


@dataclass
class Curve:
    branch: Branch
    lam: Optional[float]
    samples: list[DispersionPoint]
    metadata: dict = field(default_factory=dict)

    @property
    def k(self) -> np.ndarray:
        return np.array([s.k for s in self.samples])

    @property
    def omega(self) -> np.ndarray:
        return np.array([s.omega for s in self.samples])

    @property
    def mu(self) -> np.ndarray:
        return np.array([s.mu for s in self.samples])

    def physical(self) -> "Curve":
        """Copy without the light-cone continuation samples."""
        kept = [s for s in self.samples if s.branch is not Branch.LIGHTCONE]
        return Curve(self.branch, self.lam, kept, dict(self.metadata))


def _point(mu: float, y: float, params: ModelParams, branch: Branch) -> DispersionPoint:
    u = rapidity_inv(y)
    p = min(math.tanh(0.5 * u), P_MAX)
    v2 = params.v ** 2
    s = 1.0 - v2
    omega = math.sqrt((v2 * mu * mu + p * p) / s)
    k = math.sqrt((mu * mu + p * p) / s)
    return DispersionPoint(mu, omega, k, p, branch, u)


def _ratio(mu: float, alpha: float) -> float:
    if mu == 0:
        return 0.0
    return mu / alpha if alpha > 0 else math.inf


def omega_single(mu: float, params: ModelParams | None = None) -> DispersionPoint:
    """Point of the isolated-layer polariton at parameter `mu`."""
    params = params or ModelParams()
    if not mu >= 0:
        raise DomainError(f"mu must be nonnegative, got {mu}")
    return _point(mu, _ratio(mu, params.alpha), params, Branch.SINGLE)


def _coupled_argument(mu: float, lam: float, sign: int, alpha: float) -> float:
    """``(mu / alpha) f_pm(mu lam)``, with the ``mu -> 0`` limit of the + mode."""
    x = mu * lam
    if sign == 1:
        scaled = 1.0 / lam if x == 0 else -mu / math.expm1(-x)
    elif sign == -1:
        scaled = mu / (1.0 + math.exp(-x))
    else:
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if alpha == 0:
        return math.inf if scaled > 0 else 0.0
    return scaled / alpha


def omega_coupled(
    mu: float, lam: float, sign: int, params: ModelParams | None = None
) -> DispersionPoint:
    """Point of the coupled mode with the given `sign` at separation `lam`.

    ``sign=+1`` is the antisymmetric mode; at ``mu = 0`` it is evaluated as
    the continuous limit, which is the light-cone endpoint ``K = K_lc``.
    """
    params = params or ModelParams()
    if not mu >= 0:
        raise DomainError(f"mu must be nonnegative, got {mu}")
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    branch = Branch.PLUS if sign == 1 else Branch.MINUS
    return _point(mu, _coupled_argument(mu, lam, sign, params.alpha), params, branch)


def omega_branch(
    branch: Branch, mu: float, lam: float | None, params: ModelParams | None = None
) -> DispersionPoint:
    if branch is Branch.SINGLE:
        return omega_single(mu, params)
    if branch is Branch.PLUS:
        return omega_coupled(mu, lam, 1, params)
    if branch is Branch.MINUS:
        return omega_coupled(mu, lam, -1, params)
    raise ValueError(f"{branch} has no parametric form")


def k_lightcone(lam: float, params: ModelParams | None = None) -> float:
    """Wavevector where the antisymmetric mode touches the light cone."""
    params = params or ModelParams()
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam}")
    y = 1.0 / (params.alpha * lam) if params.alpha > 0 else math.inf
    return psi_inv(y) / math.sqrt(1.0 - params.v ** 2)


def pair_creation_threshold(k: float, params: ModelParams | None = None) -> float:
    """``sqrt(1 + v^2 K^2)``: onset of electron-hole pair creation."""
    params = params or ModelParams()
    if not k >= 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    return math.sqrt(1.0 + (params.v * k) ** 2)


def _mu_for_k(branch: Branch, target: float, lam, params: ModelParams) -> float:
    # K(mu) >= mu / sqrt(1 - v^2) bounds the root from above
    hi = target * math.sqrt(1.0 - params.v ** 2)
    return find_root_monotone(
        lambda m: omega_branch(branch, m, lam, params).k - target, 0.0, hi, tol=1e-15
    )


def sample_curve(
    branch: Branch,
    lam: float | None,
    k_max: float,
    n: int,
    params: ModelParams | None = None,
    grid: str = "linear",
) -> Curve:
    """Sample a dispersion branch so that its ``K`` values cover ``(0, k_max]``.

    The ``mu`` grid is fixed by inverting ``K(mu)`` at the two ends only and
    is then spaced linearly or logarithmically.  For :attr:`Branch.PLUS` the
    light-cone continuation ``Omega = K`` on ``[0, K_lc)`` is prepended as
    explicitly tagged :attr:`Branch.LIGHTCONE` samples.
    """
    params = params or ModelParams()
    if n < 2:
        raise ValueError("need at least two samples")
    if not k_max > 0:
        raise ValueError("k_max must be positive")
    if grid not in ("linear", "log"):
        raise ValueError(f"grid must be 'linear' or 'log', got {grid!r}")
    if branch is Branch.LIGHTCONE:
        raise ValueError("sample Branch.PLUS to obtain the light-cone continuation")
    if branch is not Branch.SINGLE and lam is None:
        raise ValueError(f"{branch.value} branch needs a separation")

    meta = {"params": params.as_dict(), "k_max": k_max, "n": n, "grid": grid}
    samples: list[DispersionPoint] = []
    k_start = 0.0
    if branch is Branch.PLUS:
        k_lc = k_lightcone(lam, params)
        meta["k_lightcone"] = k_lc
        n_lc = max(2, int(round(n * min(k_lc, k_max) / k_max)))
        s = math.sqrt(1.0 - params.v ** 2)
        for k in np.linspace(0.0, min(k_lc, k_max), n_lc, endpoint=False):
            samples.append(DispersionPoint(0.0, float(k), float(k), float(k) * s, Branch.LIGHTCONE))
        if k_lc >= k_max:
            return Curve(branch, lam, samples, meta)
        k_start = k_lc

    mu_hi = _mu_for_k(branch, k_max, lam, params)
    if grid == "linear":
        if branch is Branch.PLUS:
            mus = np.linspace(0.0, mu_hi, n)
        else:
            mus = np.linspace(0.0, mu_hi, n + 1)[1:]
    else:
        k_lo = k_start + 1e-3 * (k_max - k_start)
        mu_lo = _mu_for_k(branch, k_lo, lam, params)
        mus = np.geomspace(mu_lo, mu_hi, n)
        if branch is Branch.PLUS:
            mus = np.concatenate(([0.0], mus[:-1]))
    for m in mus:
        pt = omega_branch(branch, float(m), lam, params)
        if not samples or pt.k > samples[-1].k:
            samples.append(pt)
    return Curve(branch, lam, samples, meta)
