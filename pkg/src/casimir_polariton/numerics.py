"""Quadrature, root finding and 1-D maximization kernels.

The adaptive rules are QUADPACK's Gauss-Kronrod integrators as wrapped by
:func:`scipy.integrate.quad`.  They never evaluate the integrand at the
interval endpoints, so integrable endpoint singularities need no special
handling.  Semi-infinite integrals are mapped onto ``(0, 1)`` before being
handed to the finite rule.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize

from .errors import BracketInvalid, NoConvergence

__all__ = [
    "Transform",
    "QuadratureConfig",
    "IntegralEstimate",
    "integrate_finite",
    "integrate_semi_infinite",
    "find_root_monotone",
    "maximize_1d",
]

RTOL_ENV_VAR = "CASIMIR_QUAD_RTOL"


class Transform(enum.Enum):
    """Maps used to send ``[0, inf)`` onto a finite interval."""

    NONE = "none"
    RATIONAL = "rational"  # x = t / (1 - t)
    EXP = "exp"  # x = -ln(1 - t)


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 200
    transform: Transform = Transform.RATIONAL

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if not self.abs_tol >= 0:
            raise ValueError(f"abs_tol must be nonnegative, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")

    @classmethod
    def from_env(cls, **overrides) -> "QuadratureConfig":
        """Default configuration with ``CASIMIR_QUAD_RTOL`` applied, if set."""
        raw = os.environ.get(RTOL_ENV_VAR)
        if raw is not None and "rel_tol" not in overrides:
            overrides["rel_tol"] = float(raw)
        return cls(**overrides)

    def tightened(self, factor: float = 10.0) -> "QuadratureConfig":
        """Copy with both tolerances divided by `factor` (for inner integrals)."""
        return replace(self, rel_tol=self.rel_tol / factor, abs_tol=self.abs_tol / factor)

    def with_transform(self, transform: Transform) -> "QuadratureConfig":
        return replace(self, transform=transform)


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool

    def __float__(self):
        return float(self.value)


# QUADPACK refuses relative tolerances below 50 eps when abs_tol is zero;
# convergence is still judged against the configured value
_QUAD_MIN_RTOL = 50.0 * np.finfo(float).eps


def _tolerance(cfg: QuadratureConfig, value: float) -> float:
    return max(cfg.abs_tol, cfg.rel_tol * abs(value))


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    points: Sequence[float] | None = None,
) -> IntegralEstimate:
    """Adaptive Gauss-Kronrod estimate of the integral of `f` over ``(a, b)``.

    Parameters
    ----------
    f : callable
        Scalar integrand.  It is never evaluated at `a` or `b`.
    a, b : float
        Finite limits with ``a < b``.
    cfg : QuadratureConfig, optional
        Tolerances and subdivision limit.
    points : sequence of float, optional
        Interior break points where the integrand changes scale; points
        outside ``(a, b)`` are dropped.

    Returns
    -------
    IntegralEstimate
        When the subdivision limit is reached before the tolerance is met the
        best available estimate is returned with ``converged=False``.
    """
    cfg = cfg or QuadratureConfig()
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise ValueError(f"need finite a < b, got a={a}, b={b}")
    if points is not None:
        points = sorted(p for p in points if a < p < b) or None
    out = integrate.quad(
        f,
        a,
        b,
        epsabs=cfg.abs_tol,
        epsrel=max(cfg.rel_tol, _QUAD_MIN_RTOL),
        limit=cfg.max_subdivisions,
        points=points,
        full_output=1,
    )
    value, err, info = out[0], out[1], out[2]
    # quad appends a message to the tuple only when ier > 0
    converged = len(out) == 3 and err <= _tolerance(cfg, value)
    return IntegralEstimate(float(value), float(err), int(info["neval"]), bool(converged))


def integrate_semi_infinite(
    f: Callable[[float], float],
    cfg: QuadratureConfig | None = None,
    scale: float = 1.0,
) -> IntegralEstimate:
    """Integral of `f` over ``[0, inf)``.

    The variable is first rescaled as ``x = scale * X`` so that the bulk of
    the integrand sits at ``X ~ 1``, then mapped onto ``(0, 1)`` by the
    configured transform.
    """
    cfg = cfg or QuadratureConfig()
    if not scale > 0:
        raise ValueError(f"scale must be positive, got {scale}")

    if cfg.transform is Transform.NONE:
        out = integrate.quad(
            lambda x: scale * f(scale * x),
            0.0,
            np.inf,
            epsabs=cfg.abs_tol,
            epsrel=max(cfg.rel_tol, _QUAD_MIN_RTOL),
            limit=cfg.max_subdivisions,
            full_output=1,
        )
        value, err, info = out[0], out[1], out[2]
        converged = len(out) == 3 and err <= _tolerance(cfg, value)
        return IntegralEstimate(float(value), float(err), int(info["neval"]), bool(converged))

    if cfg.transform is Transform.RATIONAL:

        def g(t):
            s = 1.0 - t
            return scale * f(scale * t / s) / (s * s)

    else:

        def g(t):
            return scale * f(-scale * math.log1p(-t)) / (1.0 - t)

    return integrate_finite(g, 0.0, 1.0, cfg)


def find_root_monotone(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-14,
    maxiter: int = 200,
) -> float:
    """Root of a continuous monotone function bracketed by ``[lo, hi]``.

    Uses Brent's method, which falls back to bisection whenever the
    interpolation steps misbehave, so the bracket always shrinks.

    Raises
    ------
    BracketInvalid
        If ``g(lo)`` and ``g(hi)`` have the same strict sign.
    NoConvergence
        If `maxiter` iterations do not reach `tol`.
    """
    glo, ghi = g(lo), g(hi)
    if glo == 0:
        return float(lo)
    if ghi == 0:
        return float(hi)
    if not (np.sign(glo) * np.sign(ghi) < 0):
        raise BracketInvalid(f"no sign change on [{lo}, {hi}]: g(lo)={glo}, g(hi)={ghi}")
    try:
        root, res = optimize.brentq(
            g, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=maxiter,
            full_output=True, disp=False,
        )
    except RuntimeError as exc:  # pragma: no cover - disp=False suppresses this
        raise NoConvergence(str(exc)) from exc
    if not res.converged:
        raise NoConvergence(f"brentq stopped after {res.iterations} iterations: {res.flag}")
    return float(root)


def maximize_1d(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-8,
    maxiter: int = 500,
) -> tuple[float, float]:
    """Maximizer and maximum of a unimodal function on ``[lo, hi]``.

    Bounded Brent search: golden-section steps safeguarded parabolic
    interpolation, no derivatives required.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    res = optimize.minimize_scalar(
        lambda x: -f(x),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": tol, "maxiter": maxiter},
    )
    if not res.success:
        raise NoConvergence(f"maximization did not converge: {res.message}")
    return float(res.x), float(-res.fun)
