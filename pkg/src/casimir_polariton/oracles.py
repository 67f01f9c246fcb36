"""Brute-force reference evaluations used to cross-check the adaptive code.

Everything here is plain vectorized numpy on dense fixed grids with the
composite trapezoid rule.  None of it calls into the special-function,
reflection, dispersion or energy modules, so agreement with those is a
genuine two-route check.  The grids use maps whose derivative vanishes at
the ends of the range, which makes the trapezoid rule converge quickly.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "phi_vec",
    "psi_inv_vec",
    "eta_trapezoid",
    "epol_trapezoid",
    "C_trapezoid",
]


def phi_vec(x):
    """``1 + (x - 1/x) arctan(x)`` with a Taylor branch near zero."""
    x = np.asarray(x, dtype=float)
    small = x < 1e-2
    xs = np.where(small, 1.0, x)
    closed = 1.0 + (xs - 1.0 / xs) * np.arctan(xs)
    z = x * x
    series = z * (4 / 3 - z * (8 / 15 - z * (12 / 35 - z * 16 / 63)))
    return np.where(small, series, closed)


def _ucothu_minus_one(u):
    u = np.asarray(u, dtype=float)
    small = u < 1e-2
    us = np.where(small, 1.0, u)
    closed = us / np.tanh(us) - 1.0
    z = u * u
    series = z * (1 / 3 - z * (1 / 45 - z * 2 / 945))
    return np.where(small, series, closed)


def psi_inv_vec(y, iterations: int = 120):
    """Inverse of psi by plain bisection in ``u = 2 artanh(p)``.

    Returns ``p = tanh(u / 2)``.
    """
    y = np.asarray(y, dtype=float)
    lo = np.zeros_like(y)
    hi = 2.0 * y + 2.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        below = _ucothu_minus_one(mid) < y
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return np.tanh(0.25 * (lo + hi))


def _logistic_nodes(s_min, s_max, n):
    # x = 1 / (1 + e^-s); dx/ds = x (1 - x)
    s = np.linspace(s_min, s_max, n)
    x = 1.0 / (1.0 + np.exp(-s))
    return s, x, x * (1.0 - x)


def eta_trapezoid(lam: float, alpha: float, v: float, n: int = 2000, chunk: int = 100) -> float:
    """eta on an ``n x n`` tensor grid in polar variables ``(h, x)``.

    ``h = exp(s)`` radially and ``x = logistic(t)`` for the sine of the
    polar angle; both maps make the trapezoid rule spectrally accurate for
    this integrand.
    """
    s_h = np.linspace(np.log(1e-7), np.log(90.0), n)
    h = np.exp(s_h)
    wh = np.full(n, s_h[1] - s_h[0]) * h
    wh[[0, -1]] *= 0.5

    t, x, jac = _logistic_nodes(-23.0, 23.0, n)
    wx = np.full(n, t[1] - t[0]) * jac
    wx[[0, -1]] *= 0.5
    c2 = 1.0 - x * x

    total = 0.0
    for start in range(0, n, chunk):
        hh = h[start:start + chunk, None]
        rho = hh * np.sqrt(x * x + v * v * c2)[None, :]
        kappa = hh
        arg = rho / (2.0 * lam)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = np.where(arg > 0, phi_vec(arg) / np.where(arg > 0, arg * arg, 1.0), 4 / 3)
        b = alpha / (2.0 * lam) * q
        te = b * rho * rho
        tm = b * kappa
        r_te = te / (kappa + te)
        r_tm = tm / (tm + 1.0)
        e = np.exp(-kappa)
        f = np.log1p(-r_te * r_te * e) + np.log1p(-r_tm * r_tm * e)
        total += np.sum(wh[start:start + chunk, None] * hh * hh * f * wx[None, :])
    return -45.0 / (2.0 * np.pi ** 4) * total


def epol_trapezoid(lam: float, alpha: float, v: float, n: int = 40_000) -> float:
    """``E_pol / E_N`` from a log-spaced trapezoid rule in ``mu``."""
    scale = min(alpha, 1.0 / lam)
    s = np.linspace(np.log(1e-9 * scale), np.log(60.0 * max(alpha, scale)), n)
    mu = np.exp(s)
    x = mu * lam
    vv = v * v

    def omega(y):
        p = psi_inv_vec(y)
        return np.sqrt((vv * mu * mu + p * p) / (1.0 - vv))

    y0 = mu / alpha
    yp = y0 / -np.expm1(-x)
    ym = y0 / (1.0 + np.exp(-x))
    f = (omega(yp) + omega(ym) - 2.0 * omega(y0)) * mu
    w = np.full(n, s[1] - s[0]) * mu
    w[[0, -1]] *= 0.5
    return float(np.sum(w * f))


def C_trapezoid(n: int = 10_000_000, chunk: int = 1_000_000) -> float:
    """The large-separation constant from a log-spaced trapezoid rule."""
    s = np.linspace(np.log(1e-14), np.log(80.0), n)
    ds = s[1] - s[0]
    total = 0.0
    for start in range(0, n, chunk):
        ss = s[start:start + chunk]
        x = np.exp(ss)
        fm = 0.5 * (1.0 + np.tanh(0.5 * x))
        fp = 0.5 * (1.0 + 1.0 / np.tanh(0.5 * x))
        g = x ** 1.5 * (np.sqrt(fm) + np.sqrt(fp) - 2.0) * x
        w = np.full(len(ss), ds)
        if start == 0:
            w[0] *= 0.5
        if start + chunk >= n:
            w[-1] *= 0.5
        total += float(np.sum(w * g))
    return total
